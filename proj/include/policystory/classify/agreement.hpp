#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace policystory::classify {

struct AnnotatedItem {
  std::string article_id;
  std::vector<std::string> labels;  // one topic id per annotator
};

struct AnnotationSheet {
  std::vector<AnnotatedItem> items;
  std::size_t annotator_count = 0;

  // Every item has exactly annotator_count non-empty labels.
  void validate() const;
};

enum class AgreementMeasure { raw, fleiss_kappa };

// raw: fraction of items on which every annotator gave the same label.
// fleiss_kappa: Fleiss' chance-corrected multi-rater agreement. When chance
// agreement is already 1 (a single label used everywhere) kappa is defined
// as 1. Requires >= 2 annotators and >= 1 item; a ragged sheet is a
// ValidationError.
double compute_agreement(const AnnotationSheet& sheet, AgreementMeasure measure);

AgreementMeasure parse_measure(std::string_view name);

}  // namespace policystory::classify
