#include "hecke/json_io.hpp"

#include "hecke/error.hpp"

namespace hecke {

namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorKind::ParseError, std::string("missing key '") + key + "'");
  }
  return j.at(key);
}

const Json& require_array(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::ParseError, "expected an array, got " + j.dump());
  return j;
}

std::string require_string(const Json& j) {
  if (!j.is_string()) throw Error(ErrorKind::ParseError, "expected a string, got " + j.dump());
  return j.get<std::string>();
}

long require_long(const Json& j) {
  if (!j.is_number_integer()) throw Error(ErrorKind::ParseError, "expected an integer, got " + j.dump());
  return j.get<long>();
}

}  // namespace

Json to_json(const Rational& q) { return to_string(q); }
Json to_json(const Integer& z) { return to_string(z); }

Json to_json(const FieldElement& a) {
  Json j = Json::object();
  if (a.field() == nullptr) {
    j["field"] = nullptr;
    j["coefficients"] = Json::array({to_string(a.coefficient(0))});
    return j;
  }
  j["field"] = a.field()->conductor();
  Json coeffs = Json::array();
  for (const Rational& c : a.coefficients()) coeffs.push_back(to_string(c));
  j["coefficients"] = std::move(coeffs);
  return j;
}

Json to_json(const FieldVector& v) {
  Json j = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(to_json(v(i)));
  return j;
}

Json to_json(const FieldMatrix& m) {
  Json j = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    j.push_back(std::move(row));
  }
  return j;
}

Json to_json(const IntegerMatrix& m) {
  Json j = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
    j.push_back(std::move(row));
  }
  return j;
}

Json to_json(const IntegerVector& v) {
  Json j = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(to_string(v(i)));
  return j;
}

Rational rational_from_json(const Json& j) { return parse_rational(require_string(j)); }
Integer integer_from_json(const Json& j) { return parse_integer(require_string(j)); }

FieldElement field_element_from_json(const Json& j) {
  const Json& coeffs = require_array(require(j, "coefficients"));
  const Json& tag = require(j, "field");
  if (tag.is_null()) {
    if (coeffs.size() != 1) throw Error(ErrorKind::ParseError, "an untagged constant has one coefficient");
    return FieldElement(rational_from_json(coeffs[0]));
  }
  const long m = require_long(tag);
  if (m < 1) throw Error(ErrorKind::ParseError, "field conductor must be positive");
  const CyclotomicField& field = CyclotomicField::get(m);
  if (static_cast<int>(coeffs.size()) != field.degree()) {
    throw Error(ErrorKind::ParseError, "expected " + std::to_string(field.degree()) + " coefficients for Q(zeta_" +
                                           std::to_string(m) + ")");
  }
  std::vector<Rational> values;
  for (const Json& c : coeffs) values.push_back(rational_from_json(c));
  return FieldElement::from_coefficients(field, values);
}

FieldVector field_vector_from_json(const Json& j) {
  require_array(j);
  FieldVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = field_element_from_json(j[i]);
  return v;
}

FieldMatrix field_matrix_from_json(const Json& j) {
  require_array(j);
  const std::size_t rows = j.size();
  const std::size_t cols = rows == 0 ? 0 : require_array(j[0]).size();
  FieldMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (require_array(j[r]).size() != cols) throw Error(ErrorKind::ParseError, "ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = field_element_from_json(j[r][c]);
    }
  }
  return m;
}

IntegerMatrix integer_matrix_from_json(const Json& j) {
  require_array(j);
  const std::size_t rows = j.size();
  const std::size_t cols = rows == 0 ? 0 : require_array(j[0]).size();
  IntegerMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (require_array(j[r]).size() != cols) throw Error(ErrorKind::ParseError, "ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = integer_from_json(j[r][c]);
    }
  }
  return m;
}

IntegerVector integer_vector_from_json(const Json& j) {
  require_array(j);
  IntegerVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = integer_from_json(j[i]);
  return v;
}

Json to_json(const HeckeElement& s) {
  const HeckeInstance& inst = *s.instance();
  const Subgroup nk = join(inst.normal_subgroup(), s.level());
  const LeftCosets cosets = left_cosets(nk);
  Json j = Json::object();
  j["instance"] = inst.id();
  j["level"] = s.level().members();
  j["transversal"] = cosets.transversal;
  Json values = Json::array();
  for (Elem g : cosets.transversal) values.push_back(to_json(s(g)));
  j["values"] = std::move(values);
  return j;
}

HeckeElement hecke_element_from_json(const Json& j, const InstancePtr& instance) {
  const std::string id = require_string(require(j, "instance"));
  if (id != instance->id()) {
    throw Error(ErrorKind::InstanceMismatch, "element of '" + id + "' loaded into '" + instance->id() + "'");
  }
  std::vector<Elem> members = require(j, "level").get<std::vector<Elem>>();
  for (Elem g : members) {
    if (g < 0 || g >= instance->group().order()) throw Error(ErrorKind::ParseError, "level member out of range");
  }
  Subgroup level(instance->group_ptr(), members);
  const LeftCosets cosets = left_cosets(join(instance->normal_subgroup(), level));
  if (require(j, "transversal").get<std::vector<Elem>>() != cosets.transversal) {
    throw Error(ErrorKind::InconsistentValues, "transversal does not match the canonical coset representatives");
  }
  const Json& values = require_array(require(j, "values"));
  std::vector<FieldElement> coset_values;
  for (const Json& v : values) coset_values.push_back(field_element_from_json(v));
  return make_element(instance, coset_values, level);
}

Json to_json(const CPElement& x) {
  Json j = Json::object();
  j["parent"] = x.parent()->label();
  j["coefficients"] = to_json(x.coefficients());
  return j;
}

CPElement cp_element_from_json(const Json& j, const CPPtr& parent) {
  const std::string label = require_string(require(j, "parent"));
  if (label != parent->label()) {
    throw Error(ErrorKind::ParentMismatch, "element of '" + label + "' loaded into '" + parent->label() + "'");
  }
  FieldVector coeffs = field_vector_from_json(require(j, "coefficients"));
  if (coeffs.size() != parent->order()) throw Error(ErrorKind::ParseError, "coefficient count != |D|");
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) coeffs(i) = coeffs(i).in(parent->field());
  return CPElement(parent, std::move(coeffs));
}

Json structure_to_json(const CrossedProduct& a) {
  Json j = Json::object();
  j["label"] = a.label();
  j["order"] = a.order();
  j["field"] = a.field().conductor();
  j["section"] = a.section();
  Json c = Json::array();
  for (Elem d = 0; d < a.order(); ++d) c.push_back(a.c_exponent(d));
  j["c"] = std::move(c);
  j["w"] = to_json(a.w_table());
  return j;
}

Json to_json(const CovirtZElement& x) {
  Json j = Json::object();
  j["tower"] = x.tower()->name();
  j["level"] = x.level_index();
  Json slices = Json::array();
  for (const auto& [m, values] : x.slices()) slices.push_back(Json::array({m, to_json(values)}));
  j["slices"] = std::move(slices);
  return j;
}

CovirtZElement covirt_element_from_json(const Json& j, const TowerPtr& tower) {
  const std::string name = require_string(require(j, "tower"));
  if (name != tower->name()) {
    throw Error(ErrorKind::IncompatibleInstance, "element of '" + name + "' loaded into '" + tower->name() + "'");
  }
  const long level = require_long(require(j, "level"));
  if (level < 0 || level > tower->depth()) throw Error(ErrorKind::ParseError, "level out of range");
  std::map<long, FieldVector> slices;
  for (const Json& pair : require_array(require(j, "slices"))) {
    if (!pair.is_array() || pair.size() != 2) throw Error(ErrorKind::ParseError, "slice must be [n, table]");
    const long m = require_long(pair[0]);
    if (slices.count(m)) throw Error(ErrorKind::ParseError, "duplicate slice " + std::to_string(m));
    slices[m] = field_vector_from_json(pair[1]);
  }
  return CovirtZElement(tower, static_cast<int>(level), std::move(slices));
}

Json to_json(const SmithForm& s) {
  Json j = Json::object();
  Json diag = Json::array();
  for (const Integer& d : s.diagonal()) diag.push_back(to_string(d));
  j["diagonal"] = std::move(diag);
  j["left"] = to_json(s.left);
  j["right"] = to_json(s.right);
  return j;
}

Json to_json(const Cokernel& c) {
  Json j = Json::object();
  j["free_rank"] = c.free_rank;
  Json torsion = Json::array();
  for (const Integer& t : c.torsion) torsion.push_back(to_string(t));
  j["torsion"] = std::move(torsion);
  return j;
}

namespace {

Json algebra_structure(const CrossedProduct& a) {
  Json table = Json::array();
  Json c = Json::array();
  for (Elem x = 0; x < a.order(); ++x) {
    Json row = Json::array();
    for (Elem y = 0; y < a.order(); ++y) row.push_back(a.group().mul(x, y));
    table.push_back(std::move(row));
    c.push_back(a.c_exponent(x));
  }
  return Json{{"table", std::move(table)}, {"c", std::move(c)}, {"w", to_json(a.w_table())}};
}

}  // namespace

Json to_json(const SemisimpleDecomposition& dec) {
  Json j = Json::object();
  j["algebra"] = dec.algebra->label();
  j["order"] = dec.algebra->order();
  j["field"] = dec.algebra->field().conductor();
  j["structure"] = algebra_structure(*dec.algebra);
  j["center_basis"] = to_json(dec.center_basis);
  Json blocks = Json::array();
  for (const Block& b : dec.blocks) {
    Json jb = Json::object();
    jb["dimension"] = b.dimension;
    jb["matrix_size"] = b.matrix_size;
    jb["idempotent"] = to_json(b.idempotent.coefficients());
    jb["primitive"] = to_json(b.primitive.coefficients());
    Json fp = Json::array();
    for (const auto& f : b.fingerprint) fp.push_back(to_json(f));
    jb["fingerprint"] = std::move(fp);
    Json ch = Json::array();
    for (const auto& f : b.character) ch.push_back(to_json(f));
    jb["character"] = std::move(ch);
    jb["basis"] = to_json(b.basis);
    blocks.push_back(std::move(jb));
  }
  j["blocks"] = std::move(blocks);
  return j;
}

SemisimpleDecomposition decomposition_from_json(const Json& j, const CPPtr& algebra) {
  if (require_string(require(j, "algebra")) != algebra->label() ||
      require_long(require(j, "order")) != algebra->order() ||
      require_long(require(j, "field")) != algebra->field().conductor() ||
      require(j, "structure") != algebra_structure(*algebra)) {
    throw Error(ErrorKind::ParentMismatch, "decomposition was computed for another algebra");
  }
  SemisimpleDecomposition dec;
  dec.algebra = algebra;
  dec.center_basis = field_matrix_from_json(require(j, "center_basis"));
  const auto element = [&](const Json& v) {
    FieldVector c = field_vector_from_json(v);
    if (c.size() != algebra->order()) throw Error(ErrorKind::ParseError, "coefficient count != |D|");
    for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = c(i).in(algebra->field());
    return CPElement(algebra, std::move(c));
  };
  for (const Json& jb : require_array(require(j, "blocks"))) {
    Block b;
    b.dimension = static_cast<int>(require_long(require(jb, "dimension")));
    b.matrix_size = static_cast<int>(require_long(require(jb, "matrix_size")));
    b.idempotent = element(require(jb, "idempotent"));
    b.primitive = element(require(jb, "primitive"));
    for (const Json& f : require_array(require(jb, "fingerprint"))) b.fingerprint.push_back(field_element_from_json(f));
    for (const Json& f : require_array(require(jb, "character"))) b.character.push_back(field_element_from_json(f));
    b.basis = field_matrix_from_json(require(jb, "basis"));
    dec.blocks.push_back(std::move(b));
  }
  return dec;
}

}  // namespace hecke
