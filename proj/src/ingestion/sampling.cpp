#include "policystory/ingestion/sampling.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "policystory/util/errors.hpp"
#include "policystory/util/random.hpp"

namespace policystory::ingestion {
std::array<int, 12> month_quotas(int cap) {
  std::array<int, 12> q{};
  for (int m = 0; m < 12; ++m) q[m] = cap / 12 + (m < cap % 12 ? 1 : 0);
  return q;
}

SampleResult stratified_sample(std::span<const ArticleRef> refs, int year, int cap,
                               std::uint64_t seed) {
  if (cap < 1) throw ValidationError("stratified_sample: cap >= 1");
  std::array<std::vector<std::size_t>, 12> by_month;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    const Date& d = refs[i].published_at;
    if (d.year != year) {
      throw ValidationError("stratified_sample: ref " + refs[i].url + " dated " + d.iso() +
                            " is outside year " + std::to_string(year));
    }
    by_month[d.month - 1].push_back(i);
  }

  SampleResult result;
  SamplingReport& report = result.report;
  report.year = year;
  report.requested_cap = cap;

  const auto quota = month_quotas(cap);
  std::array<int, 12> take{};
  int surplus = 0;
  for (int m = 0; m < 12; ++m) {
    int supply = static_cast<int>(by_month[m].size());
    take[m] = std::min(quota[m], supply);
    surplus += quota[m] - take[m];
    if (supply < quota[m]) report.shortfall_months.push_back(m + 1);
  }
  // hand back the surplus one ref at a time to months with leftover supply
  while (surplus > 0) {
    bool gave = false;
    for (int m = 0; m < 12 && surplus > 0; ++m) {
      if (take[m] < static_cast<int>(by_month[m].size())) {
        ++take[m];
        --surplus;
        gave = true;
      }
    }
    if (!gave) break;
  }

  std::mt19937_64 rng(seed);
  for (int m = 0; m < 12; ++m) {
    const auto& pool = by_month[m];
    for (auto k : sample_indices(pool.size(), static_cast<std::size_t>(take[m]), rng)) {
      result.selected.push_back(refs[pool[k]]);
    }
    report.month_counts[m] = take[m];
  }
  report.achieved_total = std::accumulate(take.begin(), take.end(), 0);
  return result;
}

}  // namespace policystory::ingestion
