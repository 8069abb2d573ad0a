#include "policystory/classify/agreement.hpp"

#include <map>

#include "policystory/util/errors.hpp"
#include "policystory/util/text.hpp"

namespace policystory::classify {

void AnnotationSheet::validate() const {
  if (annotator_count < 2) throw ValidationError("AnnotationSheet: at least 2 annotators");
  if (items.empty()) throw ValidationError("AnnotationSheet: at least 1 item");
  for (const auto& item : items) {
    if (item.labels.size() != annotator_count) {
      throw ValidationError("AnnotationSheet: item " + item.article_id + " has " +
                            std::to_string(item.labels.size()) + " labels, expected " +
                            std::to_string(annotator_count));
    }
    for (const auto& l : item.labels) {
      if (text::trim(l).empty()) {
        throw ValidationError("AnnotationSheet: item " + item.article_id + " has an empty label");
      }
    }
  }
}

double compute_agreement(const AnnotationSheet& sheet, AgreementMeasure measure) {
  sheet.validate();
  const auto n_items = static_cast<double>(sheet.items.size());

  if (measure == AgreementMeasure::raw) {
    std::size_t unanimous = 0;
    for (const auto& item : sheet.items) {
      bool all_same = true;
      for (const auto& l : item.labels) all_same = all_same && l == item.labels.front();
      if (all_same) ++unanimous;
    }
    return static_cast<double>(unanimous) / n_items;
  }

  // Fleiss: P_i = (sum_j n_ij^2 - n) / (n (n - 1)), p_j = category share over
  // all ratings, kappa = (mean P_i - sum p_j^2) / (1 - sum p_j^2).
  const auto n = static_cast<double>(sheet.annotator_count);
  std::map<std::string, double> totals;
  double p_bar = 0.0;
  for (const auto& item : sheet.items) {
    std::map<std::string, double> counts;
    for (const auto& l : item.labels) counts[l] += 1.0;
    double sq = 0.0;
    for (const auto& [label, c] : counts) {
      sq += c * c;
      totals[label] += c;
    }
    p_bar += (sq - n) / (n * (n - 1.0));
  }
  p_bar /= n_items;

  double p_e = 0.0;
  for (const auto& [label, c] : totals) {
    const double p = c / (n_items * n);
    p_e += p * p;
  }
  if (p_e >= 1.0) return 1.0;  // one label used everywhere: perfect agreement
  return (p_bar - p_e) / (1.0 - p_e);
}

AgreementMeasure parse_measure(std::string_view name) {
  if (name == "raw") return AgreementMeasure::raw;
  if (name == "fleiss_kappa" || name == "kappa" || name == "fleiss") {
    return AgreementMeasure::fleiss_kappa;
  }
  throw ValidationError("unknown agreement measure '" + std::string(name) +
                        "' (expected raw or fleiss_kappa)");
}

}  // namespace policystory::classify
