#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "policystory/ingestion/search.hpp"

namespace policystory::ingestion {

struct SamplingReport {
  int year = 0;
  std::array<int, 12> month_counts{};
  int requested_cap = 0;
  int achieved_total = 0;
  std::vector<int> shortfall_months;  // 1-based months whose supply was below quota
};

struct SampleResult {
  std::vector<ArticleRef> selected;
  SamplingReport report;
};

// Round-robin split of cap over January..December; the first cap % 12 months
// get one extra.
std::array<int, 12> month_quotas(int cap);

// Per-month stratified sample. Months with less supply than their quota give
// the surplus back, which is handed out one at a time round-robin (from
// January) to months that still have unselected refs. Within a month the
// selection is uniformly random under seed. Output is ordered by month, then
// by the refs' input order. Throws ValidationError for cap < 1 or a ref dated
// outside year.
SampleResult stratified_sample(std::span<const ArticleRef> refs, int year, int cap,
                               std::uint64_t seed);

}  // namespace policystory::ingestion
