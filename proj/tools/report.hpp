#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"

namespace hecke::cli {

enum class Status { Pass, Fail, Skipped };
std::string to_string(Status s);

struct Check {
  std::string id;
  /// The identity the check establishes; a failure falsifies it.
  std::string anchor;
  Status status = Status::Pass;
  std::string detail;
  Json witness;  // null on success
  double millis = 0;
};

/// Runs `tasks` on up to `jobs` threads. Results come back in task order.
std::vector<Check> run_checks(const std::vector<std::function<Check()>>& tasks, int jobs);

/// fn(0), ..., fn(n - 1) on up to `jobs` threads; the first exception in
/// index order is rethrown after all calls finish.
void parallel_for(int n, int jobs, const std::function<void(int)>& fn);

/// A check from a predicate-like body: nullopt means pass, otherwise the
/// returned pair is (detail, witness).
struct Failure {
  std::string detail;
  Json witness;
};
Check make_check(std::string id, std::string anchor, const std::function<std::optional<Failure>()>& body);

struct ErrorInfo {
  std::string kind;
  std::string message;
  std::optional<std::string> location;
  std::optional<long> suggested_conductor;
};

class Report {
 public:
  Report(std::string command, Json config) : command_(std::move(command)), config_(std::move(config)) {}

  void add(Check c) { checks_.push_back(std::move(c)); }
  void add(std::vector<Check> cs) {
    for (auto& c : cs) checks_.push_back(std::move(c));
  }
  Json& results() { return results_; }
  const Json& results() const { return results_; }
  void set_error(ErrorInfo e) { error_ = std::move(e); }
  void set_total_millis(double ms) { total_millis_ = ms; }

  const std::vector<Check>& checks() const { return checks_; }
  const std::optional<ErrorInfo>& error() const { return error_; }
  bool passed() const;
  /// 0 on success, 1 when a check failed, 2 on an error.
  int exit_code() const;

  /// Everything except the timing section is a function of the config.
  Json body() const;
  Json to_json() const;
  std::string markdown() const;

 private:
  std::string command_;
  Json config_;
  std::vector<Check> checks_;
  Json results_ = Json::object();
  std::optional<ErrorInfo> error_;
  double total_millis_ = 0;
};

}  // namespace hecke::cli
