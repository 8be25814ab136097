#include "commands.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "hecke/error.hpp"
#include "hecke/laurent.hpp"

namespace hecke::cli {

namespace {

namespace fs = std::filesystem;

constexpr int kTripleSweepMaxOrder = 16;
constexpr int kOrbitOracleMaxLevel = 27;

const char* kAssocAnchor = "(s*s')*s'' = s*(s'*s'')";
const char* kUnitAnchor = "1_K*s = s = s*1_K for s in H(G//K)";
const char* kIndependenceAnchor = "s*s' does not depend on the admissible K or the transversal of G/NK";
const char* kRescaleAnchor = "s -> s/lambda is a ring isomorphism H_mu -> H_(lambda mu) with 1_K -> 1_K";
const char* kIsoAnchor = "b_x (r b_y) = c_x(r) w(x,y) b_xy and {b_d} is an F-basis of H(G//K)";
const char* kMaschkeAnchor = "p o i = id_M for p(u (x) m) = um and i(x) = sum_d |D|^-1 b_d (x) b_d^-1 x";
const char* kEmbedAnchor =
    "H(G//K) -> H(G//K') is multiplicative, 1_K and 1 - 1_K are orthogonal central idempotents, "
    "1_K A' 1_K is the image and the corner projection retracts it";
const char* kComposeAnchor = "the inclusions H(G//K) -> H(G//K') -> H(G//K'') compose to H(G//K) -> H(G//K'')";
const char* kPushAnchor = "phi_*(s*s') = phi_*(s)*phi_*(s') and phi_*(1_K') = 1_phi(K')";
const char* kAlphaAnchor = "alpha(xy) = alpha(x) alpha(y) and alpha is bijective on H(L//K_n)";
const char* kXiAnchor = "Xi(fg) = Xi(f) Xi(g) and Xi is bijective on monomials";
const char* kLaurentAnchor = "(fg)h = f(gh) in A_alpha[t, t^-1]";
const char* kCharAnchor =
    "omega takes root-of-unity values, omega(ab) = omega(a)omega(b), omega(gng^-1) = omega(n), "
    "rho(g) fixes omega(n) and rho is trivial on N";
const char* kSemisimpleAnchor = "the trace form of H(G//K) is nondegenerate";
const char* kDecompAnchor = "the z_i are orthogonal central idempotents summing to 1 with A z_i = M_(n_i)(F)";
const char* kSplitAnchor = "K_0(H(G//K)) -> K_0(H(G//K')) is a split injection";
const char* kUnitClassAnchor = "[A] = sum_i n_i [P_i] in K_0(A)";
const char* kColimAnchor = "K_0 of the colimit is K_0(level 0) plus the cokernels of the level maps";
const char* kNegativeAnchor = "K_n = 0 for n <= -1 for a colimit of semisimple (hence regular) rings";
const char* kWangAnchor = "K_0(H(G)) = coker(id - K_0(phi^-1)) and rank coker + rank(id - K_0(phi^-1)) = rank";
const char* kTorsionAnchor = "K_0(H(G)) is free, in particular torsion free";
const char* kCompatAnchor = "the level maps intertwine K_0(phi^-1) at consecutive depths";
const char* kNaiveAnchor = "convolution computed from the definition equals the crossed-product structure constants";
const char* kZeroAnchor = "0*s = s*0 = 0";
const char* kOrbitAnchor = "rank K_0(H(G)) equals the number of phi-orbits on the irreducible characters of E_n";

std::string sub(const Subgroup& k) { return k.to_string(); }

Json members(const Subgroup& k) { return Json(k.members()); }

FieldVector scaled(const FieldVector& v, const FieldElement& r) {
  FieldVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = r * v(i);
  return out;
}

std::vector<FieldElement> scalars(const CyclotomicField& f) {
  std::vector<FieldElement> out{FieldElement(f, 1)};
  if (f.degree() > 1) out.push_back(FieldElement::zeta(f));
  return out;
}

std::string diff_detail(const std::string& what, const std::string& expected, const std::string& actual) {
  return what + ": expected " + expected + ", got " + actual;
}

std::string table_string(const FieldVector& v) {
  std::ostringstream os;
  os << "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v(i).to_string();
  os << "]";
  return os.str();
}

struct LevelSet {
  std::vector<LevelPtr> levels;  // same order as cfg.levels, null where the build failed
  std::vector<Check> failures;
};

LevelSet build_levels(const RunConfig& cfg, const InstancePtr& inst) {
  LevelSet out;
  for (std::size_t i = 0; i < cfg.levels.size(); ++i) {
    const Subgroup& k = cfg.levels[i];
    if (cfg.tower) {
      out.levels.push_back(cfg.tower->level_algebra(static_cast<int>(i)));
      continue;
    }
    LevelPtr lv;
    out.failures.push_back(make_check("level-build " + sub(k), "K is normal and admissible", [&]() -> std::optional<Failure> {
      lv = build_level(inst, k);
      return std::nullopt;
    }));
    if (out.failures.back().status == Status::Pass) out.failures.pop_back();
    out.levels.push_back(lv);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sandbox checks.

Check associativity_check(const LevelPtr& lv) {
  return make_check("ring-associativity " + sub(lv->level()), kAssocAnchor, [&]() -> std::optional<Failure> {
    const int n = lv->algebra()->order();
    for (const auto& r : scalars(lv->algebra()->field())) {
      for (Elem x = 0; x < n; ++x) {
        for (Elem y = 0; y < n; ++y) {
          HeckeElement sy = scalar_act(r, lv->basis_function(y));
          HeckeElement xy = convolve(lv->basis_function(x), sy);
          for (Elem z = 0; z < n; ++z) {
            HeckeElement lhs = convolve(xy, lv->basis_function(z));
            HeckeElement rhs = convolve(lv->basis_function(x), convolve(sy, lv->basis_function(z)));
            if (lhs != rhs) {
              return Failure{diff_detail("(b_x r b_y) b_z", table_string(rhs.values()), table_string(lhs.values())),
                             Json::object({{"x", x}, {"y", y}, {"z", z}, {"scalar", r.to_string()}})};
            }
          }
        }
      }
    }
    return std::nullopt;
  });
}

Check unit_check(const InstancePtr& inst, const LevelPtr& lv) {
  return make_check("unit-law " + sub(lv->level()), kUnitAnchor, [&]() -> std::optional<Failure> {
    HeckeElement u = unit_1k(inst, lv->level());
    for (const auto& r : scalars(lv->algebra()->field())) {
      for (Elem d = 0; d < lv->algebra()->order(); ++d) {
        HeckeElement s = scalar_act(r, lv->basis_function(d));
        HeckeElement left = convolve(u, s), right = convolve(s, u);
        if (left != s || right != s) {
          return Failure{diff_detail(left != s ? "1_K * s" : "s * 1_K", table_string(s.values()),
                                     table_string((left != s ? left : right).values())),
                         Json::object({{"d", d}, {"scalar", r.to_string()}, {"side", left != s ? "left" : "right"}})};
        }
      }
    }
    return std::nullopt;
  });
}

Check independence_check(const InstancePtr& inst, const LevelPtr& lv) {
  return make_check("product-independence " + sub(lv->level()), kIndependenceAnchor, [&]() -> std::optional<Failure> {
    const Subgroup& k = lv->level();
    const Subgroup k2 = Subgroup::trivial(inst->group_ptr());
    const std::vector<Elem> t1 = left_cosets(join(inst->normal_subgroup(), k)).transversal;
    LeftCosets c2 = left_cosets(join(inst->normal_subgroup(), k2));
    std::vector<Elem> t2(c2.transversal.size(), 0);
    for (Elem g = 0; g < inst->group().order(); ++g) t2[c2.coset_of[g]] = std::max(t2[c2.coset_of[g]], g);
    if (k == k2 && t1 == t2) return std::nullopt;  // G = N: a single coset, nothing to vary
    for (const auto& r : scalars(lv->algebra()->field())) {
      for (Elem x = 0; x < lv->algebra()->order(); ++x) {
        for (Elem y = 0; y < lv->algebra()->order(); ++y) {
          HeckeElement s = lv->basis_function(x), t = scalar_act(r, lv->basis_function(y));
          HeckeElement p1 = convolve_with(s, t, k, t1);
          HeckeElement p2 = convolve_with(s, t, k2, t2);
          if (p1.values() != p2.values()) {
            return Failure{diff_detail("product at K' = {0} with largest representatives",
                                       table_string(p1.values()), table_string(p2.values())),
                           Json::object({{"x", x}, {"y", y}, {"scalar", r.to_string()}, {"K", members(k)},
                                         {"K2", members(k2)}, {"transversal2", t2}})};
          }
        }
      }
    }
    return std::nullopt;
  });
}

Check rescaling_check(const InstancePtr& inst, const LevelPtr& lv) {
  return make_check("measure-rescaling " + sub(lv->level()), kRescaleAnchor, [&]() -> std::optional<Failure> {
    const Rational lambda = 2;
    InstancePtr inst2 = HeckeInstance::create(inst->normal_subgroup(), inst->omega(), inst->rho(),
                                              inst->quotient_measure() * lambda, inst->id() + " rescaled");
    const FieldElement inv(inst->field(), 1 / lambda);
    const Subgroup& k = lv->level();
    auto image = [&](const HeckeElement& s) { return HeckeElement(inst2, scaled(s.values(), inv), k); };
    if (image(unit_1k(inst, k)) != unit_1k(inst2, k)) {
      return Failure{"1_K does not map to 1_K", Json::object({{"lambda", hecke::to_string(lambda)}})};
    }
    for (const auto& r : scalars(inst->field())) {
      for (Elem x = 0; x < lv->algebra()->order(); ++x) {
        for (Elem y = 0; y < lv->algebra()->order(); ++y) {
          HeckeElement s = lv->basis_function(x), t = scalar_act(r, lv->basis_function(y));
          HeckeElement lhs = convolve(image(s), image(t));
          HeckeElement rhs = image(convolve(s, t));
          if (lhs != rhs) {
            return Failure{diff_detail("image of s*s'", table_string(rhs.values()), table_string(lhs.values())),
                           Json::object({{"x", x}, {"y", y}, {"scalar", r.to_string()}, {"lambda", hecke::to_string(lambda)}})};
          }
        }
      }
    }
    return std::nullopt;
  });
}

Check iso_check_of(const LevelPtr& lv) {
  return make_check("crossed-product " + sub(lv->level()), kIsoAnchor, [&]() -> std::optional<Failure> {
    IsoReport rep = iso_check(*lv);
    if (rep.ok) return std::nullopt;
    if (!rep.basis_independent) return Failure{"the b_d are not an F-basis", Json()};
    const IsoMismatch& m = rep.mismatches.front();
    return Failure{diff_detail("b_x (r b_y)", m.expected, m.actual),
                   Json::object({{"x", m.d1}, {"y", m.d2}, {"scalar", m.scalar}})};
  });
}

Check maschke_check(const LevelPtr& lv) {
  return make_check("maschke " + sub(lv->level()), kMaschkeAnchor, [&]() -> std::optional<Failure> {
    for (int copies : {1, 2}) {
      MaschkeReport rep = maschke_section(*lv->algebra(), copies);
      if (!rep.ok) return Failure{rep.first_failure, Json::object({{"copies", copies}})};
    }
    return std::nullopt;
  });
}

Check embedding_check(const LevelPtr& coarse, const LevelPtr& fine) {
  return make_check("level-embedding " + sub(coarse->level()) + " -> " + sub(fine->level()), kEmbedAnchor,
                    [&]() -> std::optional<Failure> {
                      EmbeddingReport rep = verify_embedding(embed_level(coarse, fine));
                      if (rep.ok()) return std::nullopt;
                      return Failure{rep.first_failure,
                                     Json::object({{"multiplicative", rep.multiplicative},
                                                   {"unit_central_idempotent", rep.unit_central_idempotent},
                                                   {"complement_central_idempotent", rep.complement_central_idempotent},
                                                   {"orthogonal", rep.orthogonal},
                                                   {"corner_is_image", rep.corner_is_image},
                                                   {"retraction_is_left_inverse", rep.retraction_is_left_inverse}})};
                    });
}

Check composition_check(const LevelPtr& a, const LevelPtr& b, const LevelPtr& c) {
  return make_check("embedding-composition " + sub(a->level()) + " -> " + sub(c->level()), kComposeAnchor,
                    [&]() -> std::optional<Failure> {
                      LevelEmbedding ab = embed_level(a, b), bc = embed_level(b, c), ac = embed_level(a, c);
                      FieldMatrix composed = compose(bc, ab).matrix();
                      for (Eigen::Index j = 0; j < composed.cols(); ++j) {
                        if (composed.col(j) != ac.matrix().col(j)) {
                          return Failure{"column " + std::to_string(j) + " differs", Json::object({{"d", j}})};
                        }
                      }
                      return std::nullopt;
                    });
}

Check character_check(const RunConfig& cfg) {
  return make_check("normal-character", kCharAnchor, [&]() -> std::optional<Failure> {
    CharacterReport rep = validate_normal_character(cfg.omega, cfg.rho);
    if (rep.ok) return std::nullopt;
    Json all = Json::array();
    for (const auto& v : rep.violations) {
      all.push_back(Json::object({{"condition", v.condition},
                                  {"identity", v.identity},
                                  {"elements", v.witness},
                                  {"detail", v.detail}}));
    }
    const auto& first = rep.violations.front();
    return Failure{first.condition + ": " + first.identity + " fails (" + first.detail + ")", std::move(all)};
  });
}

std::vector<Check> pushforward_checks(const RunConfig& cfg, const InstancePtr& inst, const Subgroup& h) {
  std::vector<Check> out;
  InclusionData data;
  out.push_back(make_check("pushforward-setup " + sub(h), kPushAnchor, [&]() -> std::optional<Failure> {
    data = restrict_instance(inst, h);
    if (auto v = pushforward_violation(data.phi, *data.source, *inst)) return Failure{*v, Json()};
    return std::nullopt;
  }));
  if (out.back().status != Status::Pass) return out;
  std::vector<Subgroup> done;
  for (const Subgroup& k : cfg.levels) {
    const Subgroup kp = data.phi.preimage(k);
    if (std::find(done.begin(), done.end(), kp) != done.end()) continue;
    done.push_back(kp);
    const Subgroup image = data.phi.image(kp);
    if (!inst->admissible_class(image)) continue;
    out.push_back(make_check("pushforward " + sub(h) + " level " + sub(image), kPushAnchor,
                             [&]() -> std::optional<Failure> {
                               const InstancePtr& src = data.source;
                               LeftCosets cosets = left_cosets(join(src->normal_subgroup(), kp));
                               std::vector<HeckeElement> basis;
                               for (std::size_t i = 0; i < cosets.transversal.size(); ++i) {
                                 std::vector<FieldElement> vals(cosets.transversal.size(), FieldElement(src->field(), 0));
                                 vals[i] = FieldElement(src->field(), 1);
                                 basis.push_back(make_element(src, vals, kp));
                               }
                               HeckeElement pu = pushforward(data.phi, inst, unit_1k(src, kp));
                               HeckeElement target_unit = unit_1k(inst, image);
                               if (pu != target_unit) {
                                 return Failure{diff_detail("phi_*(1_K')", table_string(target_unit.values()),
                                                            table_string(pu.values())),
                                                Json::object({{"K'", members(kp)}})};
                               }
                               for (const auto& r : scalars(src->field())) {
                                 for (std::size_t a = 0; a < basis.size(); ++a) {
                                   for (std::size_t b = 0; b < basis.size(); ++b) {
                                     HeckeElement t = scalar_act(r, basis[b]);
                                     HeckeElement lhs = pushforward(data.phi, inst, convolve(basis[a], t));
                                     HeckeElement rhs = convolve(pushforward(data.phi, inst, basis[a]),
                                                                 pushforward(data.phi, inst, t));
                                     if (lhs != rhs) {
                                       return Failure{diff_detail("phi_*(s*s')", table_string(rhs.values()),
                                                                  table_string(lhs.values())),
                                                      Json::object({{"s", cosets.transversal[a]},
                                                                    {"s'", cosets.transversal[b]},
                                                                    {"scalar", r.to_string()}})};
                                     }
                                   }
                                 }
                               }
                               return std::nullopt;
                             }));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tower checks.

int xi_level(const TowerSpec& t) { return std::min(1, t.depth()); }

Check alpha_check(const TowerPtr& tower, int n) {
  return make_check("phi-automorphism depth " + std::to_string(n), kAlphaAnchor, [&]() -> std::optional<Failure> {
    LevelAutomorphism alpha(tower, n);
    if (auto v = alpha.automorphism_violation()) return Failure{*v, Json::object({{"level", n}})};
    return std::nullopt;
  });
}

std::vector<TwistedLaurentElement> monomials(const LevelAutPtr& alpha, long range) {
  std::vector<TwistedLaurentElement> out;
  const CrossedProduct& a = *alpha->algebra();
  for (long n = -range; n <= range; ++n)
    for (Elem d = 0; d < a.order(); ++d) out.push_back(TwistedLaurentElement::monomial(alpha, a.basis(d), n));
  return out;
}

Check xi_check(const TowerPtr& tower) {
  const int level = xi_level(*tower);
  return make_check("xi-multiplicative depth " + std::to_string(level), kXiAnchor, [&]() -> std::optional<Failure> {
    auto alpha = std::make_shared<const LevelAutomorphism>(tower, level);
    alpha->inverse();
    auto mons = monomials(alpha, 2);
    std::vector<CovirtZElement> images;
    for (const auto& f : mons) {
      images.push_back(xi(f));
      if (xi_inv(images.back(), alpha) != f) {
        return Failure{"Xi^-1(Xi(f)) != f for f = " + f.to_string(), Json::object({{"f", f.to_string()}})};
      }
    }
    for (std::size_t i = 0; i < mons.size(); ++i) {
      for (std::size_t j = 0; j < mons.size(); ++j) {
        CovirtZElement lhs = xi(laurent_mul(mons[i], mons[j]));
        CovirtZElement rhs = direct_convolve(images[i], images[j]);
        if (lhs != rhs) {
          return Failure{"Xi(fg) != Xi(f)Xi(g)",
                         Json::object({{"f", mons[i].to_string()}, {"g", mons[j].to_string()}, {"level", level}})};
        }
      }
    }
    return std::nullopt;
  });
}

Check laurent_assoc_check(const TowerPtr& tower) {
  const int level = xi_level(*tower);
  return make_check("laurent-associativity depth " + std::to_string(level), kLaurentAnchor,
                    [&]() -> std::optional<Failure> {
                      auto alpha = std::make_shared<const LevelAutomorphism>(tower, level);
                      alpha->inverse();
                      auto mons = monomials(alpha, 1);
                      for (const auto& f : mons) {
                        for (const auto& g : mons) {
                          TwistedLaurentElement fg = laurent_mul(f, g);
                          for (const auto& h : mons) {
                            if (laurent_mul(fg, h) != laurent_mul(f, laurent_mul(g, h))) {
                              return Failure{"(fg)h != f(gh)", Json::object({{"f", f.to_string()},
                                                                             {"g", g.to_string()},
                                                                             {"h", h.to_string()}})};
                            }
                          }
                        }
                      }
                      return std::nullopt;
                    });
}

Check skipped(std::string id, std::string anchor, std::string why) {
  Check c;
  c.id = std::move(id);
  c.anchor = std::move(anchor);
  c.status = Status::Skipped;
  c.detail = std::move(why);
  return c;
}

// ---------------------------------------------------------------------------
// K-theory helpers.

std::vector<DecompositionPtr> decompositions(const RunConfig& cfg, const RunOptions& opt,
                                             const std::vector<LevelPtr>& levels) {
  std::vector<DecompositionPtr> out(levels.size());
  parallel_for(static_cast<int>(levels.size()), opt.jobs, [&](int i) {
    if (!levels[i]) return;
    out[i] = cached_decomposition(cfg, opt, i, levels[i]->algebra());
  });
  return out;
}

Json certificate_json(const SemisimplicityCertificate& c) {
  return Json::object({{"nondegenerate", c.nondegenerate},
                       {"trace_field", c.trace_field},
                       {"gram_size", c.gram_size},
                       {"determinant", to_json(c.determinant)}});
}

Json blocks_json(const SemisimpleDecomposition& dec) {
  Json dims = Json::array(), sizes = Json::array();
  for (const auto& b : dec.blocks) {
    dims.push_back(b.dimension);
    sizes.push_back(b.matrix_size);
  }
  return Json::object({{"count", dec.rank()}, {"dimensions", dims}, {"matrix_sizes", sizes}});
}

NegativeKRecord negative_record() {
  NegativeKRecord r;
  r.reason =
      "every level algebra is semisimple, hence regular, so K_n of each level and of their colimit vanishes "
      "for n <= -1";
  return r;
}

Json negative_json(const NegativeKRecord& r) {
  return Json::object({{"range", r.range}, {"value", r.value}, {"reason", r.reason}, {"anchor", kNegativeAnchor}});
}

Check negative_check(const std::vector<LevelPtr>& levels) {
  return make_check("negative-k", kNegativeAnchor, [&]() -> std::optional<Failure> {
    for (const auto& lv : levels) {
      if (!lv) return Failure{"a level failed to build", Json()};
      SemisimplicityCertificate c = certify_semisimple(*lv->algebra());
      if (!c.nondegenerate) {
        return Failure{"trace form degenerate at level " + sub(lv->level()), Json::object({{"level", members(lv->level())}})};
      }
    }
    return std::nullopt;
  });
}

bool nested(const LevelPtr& a, const LevelPtr& b) { return a && b && b->level().is_subset_of(a->level()); }

void add_error(Report& rep, const std::exception& e) {
  ErrorInfo info;
  info.message = e.what();
  if (auto* ns = dynamic_cast<const NonSplitBlockError*>(&e)) {
    info.kind = "NonSplitBlock";
    info.suggested_conductor = ns->suggested_conductor();
  } else if (auto* ce = dynamic_cast<const ConfigError*>(&e)) {
    info.kind = "ConfigError";
    info.location = ce->location();
  } else if (auto* he = dynamic_cast<const Error*>(&e)) {
    info.kind = std::string(to_string(he->kind()));
  } else {
    info.kind = "InternalError";
  }
  rep.set_error(std::move(info));
}

std::string hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::optional<std::string> character_violation(const SemisimpleDecomposition& dec) {
  const CrossedProduct& a = *dec.algebra;
  for (std::size_t i = 0; i < dec.blocks.size(); ++i) {
    const Block& b = dec.blocks[i];
    if (b.matrix_size != 1) continue;
    if (static_cast<int>(b.character.size()) != a.order()) return "block " + std::to_string(i) + ": character size";
    for (Elem d = 0; d < a.order(); ++d) {
      if (a.basis(d) * b.idempotent != b.character[d] * b.idempotent) {
        return "block " + std::to_string(i) + ": b_" + std::to_string(d) + " z != chi(b_d) z";
      }
    }
  }
  return std::nullopt;
}

}  // namespace

// ---------------------------------------------------------------------------

std::string cache_key(const RunConfig& cfg, int index) {
  return hex(fnv1a(cfg.echo.dump() + "\n" + std::to_string(index) + "\n" + kToolVersion));
}

DecompositionPtr cached_decomposition(const RunConfig& cfg, const RunOptions& opt, int index, const CPPtr& algebra) {
  std::optional<fs::path> path;
  if (opt.cache_dir) path = fs::path(*opt.cache_dir) / (cache_key(cfg, index) + ".json");
  if (path && fs::exists(*path)) {
    try {
      std::ifstream in(*path);
      Json j = Json::parse(in);
      if (j.at("tool_version") == kToolVersion && j.at("level") == index) {
        auto dec = std::make_shared<SemisimpleDecomposition>(decomposition_from_json(j.at("decomposition"), algebra));
        if (!decomposition_violation(*dec) && !character_violation(*dec)) return dec;
      }
    } catch (const std::exception&) {
      // fall through and recompute
    }
  }
  DecompositionPtr dec;
  try {
    dec = std::make_shared<const SemisimpleDecomposition>(block_decompose(*algebra));
  } catch (const NonSplitBlockError& e) {
    throw NonSplitBlockError("level " + std::to_string(index) + ": " + e.detail(), e.suggested_conductor());
  }
  if (path) {
    std::error_code ec;
    fs::create_directories(path->parent_path(), ec);
    Json j = Json::object({{"tool_version", kToolVersion},
                           {"config_hash", hex(cfg.hash())},
                           {"level", index},
                           {"decomposition", to_json(*dec)}});
    const fs::path tmp = path->string() + ".tmp";
    {
      std::ofstream out(tmp);
      out << j.dump();
    }
    fs::rename(tmp, *path, ec);
  }
  return dec;
}

InclusionData restrict_instance(const InstancePtr& target, const Subgroup& h) {
  const FiniteGroup& g = target->group();
  const std::vector<Elem>& mem = h.members();
  std::vector<int> index(g.order(), -1);
  for (std::size_t i = 0; i < mem.size(); ++i) index[mem[i]] = static_cast<int>(i);
  std::vector<std::vector<Elem>> table(mem.size(), std::vector<Elem>(mem.size()));
  for (std::size_t a = 0; a < mem.size(); ++a)
    for (std::size_t b = 0; b < mem.size(); ++b) table[a][b] = index[g.mul(mem[a], mem[b])];
  GroupPtr hg = FiniteGroup::from_table(std::move(table), "H" + sub(h));
  GroupHom phi = GroupHom::inclusion(h, hg);
  const Subgroup np = phi.preimage(target->normal_subgroup());
  std::vector<FieldElement> values;
  for (Elem x : np.members()) values.push_back(target->omega()(phi(x)));
  NormalCharacter omega(np, target->field(), std::move(values));
  std::vector<long> exps;
  for (Elem x = 0; x < hg->order(); ++x) exps.push_back(target->rho().exponent(phi(x)));
  RhoAction rho(hg, target->field(), std::move(exps));
  const Rational mu = target->quotient_measure() * Rational(h.order(), g.order());
  InstancePtr source = HeckeInstance::create(np, omega, rho, mu, target->id() + " restricted to " + sub(h));
  return InclusionData{phi, source};
}

int class_orbit_count(const GroupHom& phi) {
  const FiniteGroup& g = *phi.source();
  const int n = g.order();
  std::vector<int> cls(n, -1);
  int classes = 0;
  for (Elem x = 0; x < n; ++x) {
    if (cls[x] >= 0) continue;
    for (Elem h = 0; h < n; ++h) cls[g.conj(h, x)] = classes;
    ++classes;
  }
  std::vector<int> parent(classes);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  int orbits = classes;
  for (Elem x = 0; x < n; ++x) {
    int a = find(cls[x]), b = find(cls[phi(x)]);
    if (a != b) {
      parent[a] = b;
      --orbits;
    }
  }
  return orbits;
}

FieldVector naive_convolution(const HeckeInstance& inst, const FieldVector& s, const FieldVector& t) {
  const FiniteGroup& g = inst.group();
  const FieldElement scale(inst.field(), inst.quotient_measure() / g.order());
  FieldVector out(g.order());
  for (Elem x = 0; x < g.order(); ++x) {
    FieldElement acc(inst.field(), 0);
    for (Elem h = 0; h < g.order(); ++h) {
      const Elem xh = g.mul(x, h);
      if (s(xh).is_zero()) continue;
      acc += s(xh) * inst.rho().act(xh, t(g.inv(h)));
    }
    out(x) = scale * acc;
  }
  return out;
}

// ---------------------------------------------------------------------------

Report cmd_verify(const RunConfig& cfg, const RunOptions& opt) {
  Report rep("verify", cfg.echo);
  rep.add(character_check(cfg));
  if (rep.checks().back().status == Status::Fail) return rep;
  InstancePtr inst = cfg.instance();
  LevelSet ls = build_levels(cfg, inst);
  rep.add(ls.failures);

  const bool small = inst->group().order() <= kTripleSweepMaxOrder;
  std::vector<std::function<Check()>> tasks;
  for (const LevelPtr& lv : ls.levels) {
    if (!lv) continue;
    if (cfg.wants("ring-axioms")) {
      if (small) {
        tasks.push_back([lv] { return associativity_check(lv); });
        tasks.push_back([inst, lv] { return unit_check(inst, lv); });
        tasks.push_back([inst, lv] { return independence_check(inst, lv); });
        tasks.push_back([inst, lv] { return rescaling_check(inst, lv); });
      } else {
        tasks.push_back([lv] {
          return skipped("ring-axioms " + sub(lv->level()), kAssocAnchor,
                         "exhaustive triple sweeps are bounded to |G| <= " + std::to_string(kTripleSweepMaxOrder));
        });
      }
    }
    if (cfg.wants("crossed-product")) tasks.push_back([lv] { return iso_check_of(lv); });
    if (cfg.wants("maschke")) tasks.push_back([lv] { return maschke_check(lv); });
  }
  if (cfg.wants("embedding")) {
    for (std::size_t i = 0; i + 1 < ls.levels.size(); ++i) {
      LevelPtr a = ls.levels[i], b = ls.levels[i + 1];
      if (!nested(a, b)) continue;
      tasks.push_back([a, b] { return embedding_check(a, b); });
      if (i + 2 < ls.levels.size() && nested(b, ls.levels[i + 2])) {
        LevelPtr c = ls.levels[i + 2];
        tasks.push_back([a, b, c] { return composition_check(a, b, c); });
      }
    }
  }
  if (cfg.wants("pushforward")) {
    for (const Subgroup& h : cfg.inclusions) {
      tasks.push_back([&cfg, inst, h] {
        std::vector<Check> cs = pushforward_checks(cfg, inst, h);
        Check all = cs.front();
        all.id = "pushforward " + sub(h);
        for (std::size_t i = 1; i < cs.size() && all.status == Status::Pass; ++i) {
          if (cs[i].status == Status::Fail) {
            all.status = Status::Fail;
            all.detail = cs[i].id + ": " + cs[i].detail;
            all.witness = cs[i].witness;
          }
        }
        all.detail = all.status == Status::Pass ? std::to_string(cs.size() - 1) + " levels checked" : all.detail;
        return all;
      });
    }
  }
  if (cfg.tower && cfg.tower->has_twist()) {
    TowerPtr tower = cfg.tower;
    if (cfg.wants("twist")) {
      for (int n = 0; n <= tower->depth(); ++n) tasks.push_back([tower, n] { return alpha_check(tower, n); });
    }
    if (cfg.wants("xi")) tasks.push_back([tower] { return xi_check(tower); });
    if (cfg.wants("laurent")) tasks.push_back([tower] { return laurent_assoc_check(tower); });
  }
  if (cfg.wants("negative-k")) {
    std::vector<LevelPtr> built;
    for (const auto& lv : ls.levels)
      if (lv) built.push_back(lv);
    tasks.push_back([built] { return negative_check(built); });
    rep.results()["negative_k"] = negative_json(negative_record());
  }
  rep.add(run_checks(tasks, opt.jobs));
  return rep;
}

Report cmd_levels(const RunConfig& cfg, const RunOptions& opt) {
  Report rep("levels", cfg.echo);
  InstancePtr inst = cfg.instance();
  LevelSet ls = build_levels(cfg, inst);
  rep.add(ls.failures);
  Json levels = Json::array();
  std::vector<DecompositionPtr> decs(ls.levels.size());
  for (std::size_t i = 0; i < ls.levels.size(); ++i) {
    const LevelPtr& lv = ls.levels[i];
    if (!lv) continue;
    const CrossedProduct& a = *lv->algebra();
    Json j = Json::object();
    j["index"] = i;
    j["level"] = members(lv->level());
    j["order"] = a.order();
    int nontrivial = 0;
    for (Elem x = 0; x < a.order(); ++x)
      for (Elem y = 0; y < a.order(); ++y)
        if (!a.w(x, y).is_one()) ++nontrivial;
    j["w_nontrivial"] = nontrivial;
    j["coefficients_central"] = a.coefficients_central();
    j["structure"] = structure_to_json(a);
    SemisimplicityCertificate cert = certify_semisimple(a);
    j["semisimple"] = certificate_json(cert);
    rep.add(make_check("semisimple " + sub(lv->level()), kSemisimpleAnchor, [&]() -> std::optional<Failure> {
      if (cert.nondegenerate) return std::nullopt;
      return Failure{"degenerate trace form", cert.witness ? to_json(*cert.witness) : Json()};
    }));
    if (a.coefficients_central()) {
      decs[i] = cached_decomposition(cfg, opt, static_cast<int>(i), lv->algebra());
      j["blocks"] = blocks_json(*decs[i]);
      rep.add(make_check("decomposition " + sub(lv->level()), kDecompAnchor, [&]() -> std::optional<Failure> {
        if (auto v = decomposition_violation(*decs[i])) return Failure{*v, Json()};
        return std::nullopt;
      }));
    } else {
      j["blocks"] = nullptr;
      j["blocks_note"] = "c is not trivial; blocks are computed for central coefficients only";
    }
    levels.push_back(std::move(j));
  }
  rep.results()["levels"] = std::move(levels);
  std::vector<std::function<Check()>> tasks;
  for (std::size_t i = 0; i + 1 < ls.levels.size(); ++i) {
    LevelPtr a = ls.levels[i], b = ls.levels[i + 1];
    if (nested(a, b)) tasks.push_back([a, b] { return embedding_check(a, b); });
  }
  rep.add(run_checks(tasks, opt.jobs));
  return rep;
}

Report cmd_k0(const RunConfig& cfg, const RunOptions& opt) {
  Report rep("k0", cfg.echo);
  InstancePtr inst = cfg.instance();
  LevelSet ls = build_levels(cfg, inst);
  rep.add(ls.failures);
  std::vector<DecompositionPtr> decs = decompositions(cfg, opt, ls.levels);
  Json levels = Json::array();
  for (std::size_t i = 0; i < ls.levels.size(); ++i) {
    if (!decs[i]) continue;
    const SemisimpleDecomposition& dec = *decs[i];
    levels.push_back(Json::object({{"index", i},
                                   {"level", members(ls.levels[i]->level())},
                                   {"rank", dec.rank()},
                                   {"blocks", blocks_json(dec)}}));
    rep.add(make_check("unit-class " + sub(ls.levels[i]->level()), kUnitClassAnchor, [&]() -> std::optional<Failure> {
      IntegerVector cls = k0_class(dec, dec.algebra->one());
      for (int b = 0; b < dec.rank(); ++b) {
        if (cls(b) != dec.blocks[b].matrix_size) {
          return Failure{"class of 1 in block " + std::to_string(b) + " is " + hecke::to_string(cls(b)), to_json(cls)};
        }
      }
      return std::nullopt;
    }));
  }
  rep.results()["levels"] = std::move(levels);

  Json maps = Json::array();
  for (std::size_t i = 0; i + 1 < ls.levels.size(); ++i) {
    if (!nested(ls.levels[i], ls.levels[i + 1]) || !decs[i] || !decs[i + 1]) continue;
    IntegerMatrix m = cfg.tower ? induced_k0(*decs[i], *decs[i + 1], cfg.tower->embedding(static_cast<int>(i)))
                                : induced_k0(*decs[i], *decs[i + 1], embed_level(ls.levels[i], ls.levels[i + 1]));
    SmithForm snf = smith_normal_form(m);
    auto left = integer_left_inverse(m);
    Cokernel coker = cokernel(snf);
    Json jm = Json::object({{"from", i}, {"to", i + 1}, {"matrix", to_json(m)}, {"snf", to_json(snf)},
                            {"split_injective", left.has_value()}, {"cokernel", to_json(coker)}});
    if (left) jm["left_inverse"] = to_json(*left);
    maps.push_back(std::move(jm));
    const std::string id = "split-injective " + sub(ls.levels[i]->level()) + " -> " + sub(ls.levels[i + 1]->level());
    rep.add(make_check(id, kSplitAnchor, [&]() -> std::optional<Failure> {
      if (!left) return Failure{"no integral left inverse", Json::object({{"snf_diagonal", to_json(snf)["diagonal"]}})};
      if (*left * m != integer_identity(m.cols())) return Failure{"left inverse does not invert", Json()};
      return std::nullopt;
    }));
  }
  rep.results()["maps"] = std::move(maps);

  if (cfg.tower) {
    TowerK0 tk(cfg.tower);
    for (std::size_t i = 0; i < decs.size(); ++i) tk.adopt(static_cast<int>(i), decs[i]);
    ColimitK0 col = colim_k0(tk, cfg.tower->depth());
    Json summands = Json::array();
    for (auto r : col.summand_ranks) summands.push_back(r);
    rep.results()["colimit"] = Json::object({{"depth", col.depth},
                                             {"level_ranks", col.level_ranks},
                                             {"summand_ranks", summands},
                                             {"total_rank", col.total_rank()},
                                             {"all_split", col.all_split},
                                             {"torsion_free", col.torsion_free}});
    rep.add(make_check("colimit-bookkeeping", kColimAnchor, [&]() -> std::optional<Failure> {
      if (col.total_rank() != col.level_ranks.back() || !col.torsion_free) {
        return Failure{"summands add to " + std::to_string(col.total_rank()) + " against level rank " +
                           std::to_string(col.level_ranks.back()),
                       Json()};
      }
      return std::nullopt;
    }));
  }
  rep.results()["negative_k"] = negative_json(negative_record());
  rep.add(negative_check(ls.levels));
  return rep;
}

Report cmd_wang(const RunConfig& cfg, const RunOptions& opt) {
  Report rep("wang", cfg.echo);
  if (!cfg.tower) throw Error(ErrorKind::NoTwistConfigured, "wang needs a tower configuration");
  cfg.tower->twist();
  std::vector<LevelPtr> levels;
  for (int n = 0; n <= cfg.tower->depth(); ++n) levels.push_back(cfg.tower->level_algebra(n));
  std::vector<DecompositionPtr> decs = decompositions(cfg, opt, levels);
  TowerK0 tk(cfg.tower);
  for (std::size_t i = 0; i < decs.size(); ++i) tk.adopt(static_cast<int>(i), decs[i]);
  WangResult w = wang_assemble(tk, cfg.tower->depth());

  Json depths = Json::array();
  bool compatible = true;
  for (const WangDepth& d : w.depths) {
    Json orbits = Json::array();
    for (const auto& o : d.orbits) orbits.push_back(o);
    depths.push_back(Json::object({{"depth", d.depth},
                                   {"level_rank", d.level_rank},
                                   {"k0_rank", d.k0.free_rank},
                                   {"k0", to_json(d.k0)},
                                   {"boundary_rank", d.boundary_rank},
                                   {"orbits", std::move(orbits)},
                                   {"k0_phi_inverse", to_json(d.k0_phi_inverse)},
                                   {"snf", to_json(d.snf)},
                                   {"compatible_with_previous", d.compatible_with_previous}}));
    compatible = compatible && d.compatible_with_previous;
  }
  rep.results()["depths"] = std::move(depths);
  Json growth = Json::array();
  for (auto g : w.new_orbits) growth.push_back(g);
  rep.results()["stabilization"] =
      Json::object({{"new_orbits_per_depth", std::move(growth)},
                    {"note", "orbits first appearing at each depth; zero growth suggests the truncation has stabilized"}});
  NegativeKRecord neg = w.negative;
  rep.results()["negative_k"] = negative_json(neg);
  rep.results()["torsion_free"] = w.torsion_free;

  rep.add(make_check("wang-bookkeeping", kWangAnchor, [&]() -> std::optional<Failure> {
    if (w.bookkeeping_ok) return std::nullopt;
    return Failure{"rank coker + rank(id - P) != level rank", Json()};
  }));
  rep.add(make_check("torsion-free", kTorsionAnchor, [&]() -> std::optional<Failure> {
    for (const auto& d : w.depths) {
      if (!d.k0.torsion.empty()) return Failure{"torsion at depth " + std::to_string(d.depth), to_json(d.k0)};
    }
    return std::nullopt;
  }));
  rep.add(make_check("orbit-compatibility", kCompatAnchor, [&]() -> std::optional<Failure> {
    for (const auto& d : w.depths) {
      if (!d.compatible_with_previous) return Failure{"depth " + std::to_string(d.depth), Json::object({{"depth", d.depth}})};
    }
    return std::nullopt;
  }));
  rep.add(negative_check(levels));
  return rep;
}

Report cmd_oracle(const RunConfig& cfg, const RunOptions& opt) {
  Report rep("oracle", cfg.echo);
  InstancePtr inst = cfg.instance();
  if (cfg.tower) {
    const int top = cfg.tower->quotient_at(cfg.tower->depth()).group->order();
    if (top > kOrbitOracleMaxLevel) {
      throw Error(ErrorKind::BoundsExceeded, "orbit oracles are bounded to levels of order <= " +
                                                 std::to_string(kOrbitOracleMaxLevel) + ", got " + std::to_string(top));
    }
  } else if (inst->group().order() > kTripleSweepMaxOrder) {
    throw Error(ErrorKind::BoundsExceeded, "exhaustive sweeps are bounded to |G| <= " +
                                               std::to_string(kTripleSweepMaxOrder) + ", got " +
                                               std::to_string(inst->group().order()));
  }
  LevelSet ls = build_levels(cfg, inst);
  rep.add(ls.failures);
  std::vector<std::function<Check()>> tasks;
  for (const LevelPtr& lv : ls.levels) {
    if (!lv) continue;
    tasks.push_back([inst, lv] {
      return make_check("naive-vs-structure-constants " + sub(lv->level()), kNaiveAnchor, [&]() -> std::optional<Failure> {
        const CrossedProduct& a = *lv->algebra();
        for (const auto& r : scalars(a.field())) {
          for (Elem x = 0; x < a.order(); ++x) {
            for (Elem y = 0; y < a.order(); ++y) {
              FieldVector direct = naive_convolution(*inst, lv->basis_function(x).values(),
                                                     scaled(lv->basis_function(y).values(), r));
              FieldVector structural = lv->to_hecke(cp_mul(a.basis(x), r * a.basis(y))).values();
              if (direct != structural) {
                return Failure{diff_detail("b_x (r b_y)", table_string(structural), table_string(direct)),
                               Json::object({{"x", x}, {"y", y}, {"scalar", r.to_string()}})};
              }
            }
          }
        }
        return std::nullopt;
      });
    });
    tasks.push_back([inst, lv] {
      return make_check("zero-element " + sub(lv->level()), kZeroAnchor, [&]() -> std::optional<Failure> {
        const CrossedProduct& a = *lv->algebra();
        HeckeElement zero = zero_element(inst, lv->level());
        for (Elem x = 0; x < a.order(); ++x) {
          const HeckeElement& b = lv->basis_function(x);
          if (!convolve(zero, b).is_zero() || !convolve(b, zero).is_zero() ||
              !is_zero_matrix(naive_convolution(*inst, zero.values(), b.values())) ||
              !cp_mul(a.zero(), a.basis(x)).is_zero() || !cp_mul(a.basis(x), a.zero()).is_zero()) {
            return Failure{"nonzero product with 0", Json::object({{"x", x}})};
          }
        }
        return std::nullopt;
      });
    });
    if (!cfg.tower) {
      tasks.push_back([inst, lv] {
        return make_check("naive-associativity " + sub(lv->level()), kAssocAnchor, [&]() -> std::optional<Failure> {
          const int n = lv->algebra()->order();
          for (Elem x = 0; x < n; ++x) {
            for (Elem y = 0; y < n; ++y) {
              FieldVector xy = naive_convolution(*inst, lv->basis_function(x).values(), lv->basis_function(y).values());
              for (Elem z = 0; z < n; ++z) {
                FieldVector lhs = naive_convolution(*inst, xy, lv->basis_function(z).values());
                FieldVector rhs = naive_convolution(
                    *inst, lv->basis_function(x).values(),
                    naive_convolution(*inst, lv->basis_function(y).values(), lv->basis_function(z).values()));
                if (lhs != rhs) {
                  return Failure{diff_detail("(b_x b_y) b_z", table_string(rhs), table_string(lhs)),
                                 Json::object({{"x", x}, {"y", y}, {"z", z}})};
                }
              }
            }
          }
          return std::nullopt;
        });
      });
    }
  }
  rep.add(run_checks(tasks, opt.jobs));

  if (cfg.tower && cfg.tower->has_twist()) {
    const Twist& tw = cfg.tower->twist();
    const long m = inst->field().conductor();
    const bool plain = inst->omega().is_trivial() && inst->rho().is_trivial() && tw.rho_t % m == 1 % m;
    if (!plain) {
      rep.add(skipped("orbit-count", kOrbitAnchor, "the orbit oracle needs trivial omega, rho and rho(t)"));
    } else {
      std::vector<LevelPtr> levels;
      for (int n = 0; n <= cfg.tower->depth(); ++n) levels.push_back(cfg.tower->level_algebra(n));
      std::vector<DecompositionPtr> decs = decompositions(cfg, opt, levels);
      TowerK0 tk(cfg.tower);
      for (std::size_t i = 0; i < decs.size(); ++i) tk.adopt(static_cast<int>(i), decs[i]);
      WangResult w = wang_assemble(tk, cfg.tower->depth());
      Json rows = Json::array();
      for (const WangDepth& d : w.depths) {
        const int oracle = class_orbit_count(cfg.tower->phi_at(d.depth));
        rows.push_back(Json::object({{"depth", d.depth},
                                     {"orbit_oracle", oracle},
                                     {"snf_coker_rank", d.k0.free_rank},
                                     {"boundary_rank", d.boundary_rank}}));
        rep.add(make_check("orbit-count depth " + std::to_string(d.depth), kOrbitAnchor, [&]() -> std::optional<Failure> {
          if (oracle == d.k0.free_rank && oracle == d.boundary_rank && d.k0.torsion.empty()) return std::nullopt;
          return Failure{"oracle " + std::to_string(oracle) + ", coker rank " + std::to_string(d.k0.free_rank),
                         Json::object({{"orbit_oracle", oracle},
                                       {"snf_coker_rank", d.k0.free_rank},
                                       {"boundary_rank", d.boundary_rank}})};
        }));
      }
      rep.results()["orbit_oracle"] = std::move(rows);
    }
  }
  return rep;
}

Report run_command(const std::string& command, const RunConfig& cfg, const RunOptions& opt) {
  auto start = std::chrono::steady_clock::now();
  Report rep(command, cfg.echo);
  try {
    if (command == "verify") {
      rep = cmd_verify(cfg, opt);
    } else if (command == "levels") {
      rep = cmd_levels(cfg, opt);
    } else if (command == "k0") {
      rep = cmd_k0(cfg, opt);
    } else if (command == "wang") {
      rep = cmd_wang(cfg, opt);
    } else if (command == "oracle") {
      rep = cmd_oracle(cfg, opt);
    } else {
      throw ConfigError("command", "unknown command '" + command + "'");
    }
  } catch (const std::exception& e) {
    add_error(rep, e);
  }
  rep.set_total_millis(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count());
  return rep;
}

}  // namespace hecke::cli
