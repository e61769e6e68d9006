#pragma once

#include <string>

#include "bldg/coxeter.hpp"
#include "json.hpp"

namespace bldg::cli {

using json = nlohmann::json;

/// Accumulates checks keyed by stable identifiers.
class RunReport {
 public:
  void check(const std::string& id, bool passed, json witness = json::object());
  /// Runs f, turning an escaping exception into a failed check `id`.
  template <class F>
  void guarded(const std::string& id, F&& f) {
    try {
      f();
    } catch (const std::exception& e) {
      check(id, false, {{"error", e.what()}});
    }
  }

  int run() const { return run_; }
  int failed() const { return run_ - passed_; }
  const json& failures() const { return failures_; }
  json results = json::object();

  json to_json(const std::string& command, unsigned long long seed, double wall_ms) const;

 private:
  int run_ = 0;
  int passed_ = 0;
  json failures_ = json::array();
};

/// Collects witnesses for one aggregated check; keeps the first few.
struct Tally {
  long long checked = 0;
  long long failed = 0;
  json failures = json::array();
  void fail(json witness) {
    if (failures.size() < 10) failures.push_back(std::move(witness));
    ++failed;
  }
  json summary() const { return {{"checked", checked}, {"failed", failed}, {"failures", failures}}; }
};

json run_coxeter(RunReport& report, const std::string& name, const CoxeterMatrix& matrix);
json run_field_classify(RunReport& report, const std::string& spec);
json run_field_properties(RunReport& report, const std::string& spec, unsigned long long seed, int samples);
json run_field_eval(const std::string& spec, const std::string& op, const std::string& x, const std::string& y);

json run_projline_hua(const std::string& spec, const std::string& x, const std::string& y);
json run_projline_recover(RunReport& report, const std::string& spec, unsigned long long seed, int samples);

json run_building_verify(RunReport& report, const std::string& spec);
json run_building_cells(RunReport& report, const std::string& spec, int base);
json run_building_coords(RunReport& report, const std::string& spec, int base, bool every_word);

json run_moufang_check(RunReport& report, const std::string& spec, bool mu, bool commutators, int max_roots);
json run_moufang_filtration(RunReport& report, const std::string& spec, int from, int to,
                            unsigned long long seed);

json run_bt_tree(RunReport& report, const std::string& spec, int radius, std::string* dot);
json run_bt_iwasawa(RunReport& report, const std::string& spec, unsigned long long seed, int samples);
json run_bt_boundary(RunReport& report, const std::string& spec, int depth);
json run_bt_cone(RunReport& report, const std::string& spec, int depth, unsigned long long seed, int samples);

/// The acceptance suite; quick caps samples at 100, full at 1000.
json run_all(RunReport& report, const std::string& profile, unsigned long long seed);

}  // namespace bldg::cli
