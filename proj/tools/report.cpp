#include "report.hpp"

#include <atomic>
#include <chrono>
#include <sstream>
#include <thread>

#include "hecke/error.hpp"

namespace hecke::cli {

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
  }
  return "?";
}

std::vector<Check> run_checks(const std::vector<std::function<Check()>>& tasks, int jobs) {
  std::vector<Check> out(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) out[i] = tasks[i]();
  };
  const int n = std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

void parallel_for(int n, int jobs, const std::function<void(int)>& fn) {
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(std::max(n, 0)));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  };
  const int k = std::max(1, std::min(jobs, n));
  std::vector<std::thread> pool;
  for (int t = 1; t < k; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

Check make_check(std::string id, std::string anchor, const std::function<std::optional<Failure>()>& body) {
  Check c;
  c.id = std::move(id);
  c.anchor = std::move(anchor);
  auto start = std::chrono::steady_clock::now();
  try {
    if (auto f = body()) {
      c.status = Status::Fail;
      c.detail = std::move(f->detail);
      c.witness = std::move(f->witness);
    }
  } catch (const Error& e) {
    c.status = Status::Fail;
    c.detail = e.what();
    c.witness = Json::object({{"error", std::string(to_string(e.kind()))}});
  }
  c.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return c;
}

bool Report::passed() const {
  if (error_) return false;
  for (const auto& c : checks_)
    if (c.status == Status::Fail) return false;
  return true;
}

int Report::exit_code() const {
  if (error_) return 2;
  return passed() ? 0 : 1;
}

Json Report::body() const {
  Json j = Json::object();
  j["tool"] = Json::object({{"name", kToolName}, {"version", kToolVersion}});
  j["command"] = command_;
  j["config"] = config_;
  j["status"] = error_ ? "error" : (passed() ? "pass" : "fail");
  if (error_) {
    Json e = Json::object({{"kind", error_->kind}, {"message", error_->message}});
    if (error_->location) e["location"] = *error_->location;
    if (error_->suggested_conductor) e["suggested_conductor"] = *error_->suggested_conductor;
    j["error"] = std::move(e);
  }
  Json checks = Json::array();
  int passed = 0, failed = 0, skipped = 0;
  for (const auto& c : checks_) {
    Json jc = Json::object({{"id", c.id}, {"anchor", c.anchor}, {"status", to_string(c.status)}});
    if (!c.detail.empty()) jc["detail"] = c.detail;
    if (!c.witness.is_null()) jc["witness"] = c.witness;
    checks.push_back(std::move(jc));
    (c.status == Status::Pass ? passed : c.status == Status::Fail ? failed : skipped)++;
  }
  j["summary"] = Json::object({{"passed", passed}, {"failed", failed}, {"skipped", skipped}});
  j["checks"] = std::move(checks);
  j["results"] = results_;
  return j;
}

Json Report::to_json() const {
  Json j = body();
  Json per_check = Json::object();
  for (const auto& c : checks_) per_check[c.id] = c.millis;
  j["timing"] = Json::object({{"total_ms", total_millis_}, {"checks_ms", std::move(per_check)}});
  return j;
}

std::string Report::markdown() const {
  std::ostringstream os;
  os << "# " << kToolName << " " << command_ << ": " << config_.value("name", std::string("unnamed")) << "\n\n";
  os << "Status: **" << (error_ ? "error" : (passed() ? "pass" : "fail")) << "**\n\n";
  if (error_) {
    os << "Error `" << error_->kind << "`: " << error_->message << "\n\n";
  }
  if (!checks_.empty()) {
    os << "| check | status | detail |\n|---|---|---|\n";
    for (const auto& c : checks_) {
      std::string detail = c.detail;
      for (auto& ch : detail)
        if (ch == '|' || ch == '\n') ch = ' ';
      os << "| " << c.id << " | " << to_string(c.status) << " | " << detail << " |\n";
    }
    os << "\n";
  }
  if (!results_.empty()) os << "```json\n" << results_.dump(2) << "\n```\n";
  return os.str();
}

}  // namespace hecke::cli
