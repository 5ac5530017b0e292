#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fnx/core/json_io.hpp"

namespace fnx {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;   // counts and worst values, deterministic for a fixed seed
  double seconds = 0;
  double limit_seconds = 0;  // 0 when the criterion has no runtime limit
};

using CriterionFn = std::function<CriterionResult(std::uint64_t seed)>;

struct Criterion {
  int id;
  std::string title;
  CriterionFn run;
};

// Criteria 1..10 of the reproduction suite. Each catches its own exceptions
// and reports them as a failure.
std::vector<Criterion> acceptance_criteria();

// Runs every criterion (or only `only` when nonempty) and times it.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed = 0, const std::vector<int>& only = {},
                                            const std::function<void(const CriterionResult&)>& on_done = {});

Json criterion_to_json(const CriterionResult& r, bool with_time);

}  // namespace fnx
