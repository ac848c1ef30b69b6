#pragma once

#include <string>
#include <vector>

#include "catalog.hpp"
#include "flow.hpp"

namespace okkit::checks {

struct CheckRow {
  std::string name;
  enum class Status { Pass, Fail, Skip } status = Status::Pass;
  std::string detail;
};

struct CheckOptions {
  std::uint64_t seed = 1;
  bool extended = false;  // run flow rows on entries marked extended
  int subduction_samples = 50;
  int embedding_samples = 100;
  int flow_samples = 5;
  flow::FlowConfig flow;  // epsilon and delta are taken from the entry
};

std::vector<CheckRow> run_checks(const catalog::CatalogEntry& e, const CheckOptions& opt = {});

bool all_passed(const std::vector<CheckRow>& rows);
std::string format_table(const std::vector<CheckRow>& rows);
const char* to_string(CheckRow::Status s);

// lambda applied to (1, mu) over the reals.
std::vector<double> apply_real(const okounkov::GradingHomomorphism& lambda, const std::vector<double>& mu);

// Random level-homogeneous polynomial in the generator symbols.
algebra::Polynomial random_combination(const okounkov::SagbiDatum& d, long level, std::mt19937_64& rng);

}  // namespace okkit::checks
