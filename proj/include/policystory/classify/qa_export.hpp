#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "policystory/classify/agreement.hpp"
#include "policystory/corpus/store.hpp"

namespace policystory::classify {

inline constexpr std::size_t kDefaultQaSampleSize = 100;
inline constexpr std::size_t kDefaultAnnotators = 3;

struct QaExport {
  std::filesystem::path path;
  std::size_t rows = 0;
  std::size_t cluster_size = 0;
};

// Review sheet for one cluster: a uniform sample of min(n, cluster size)
// articles drawn without replacement under seed, written as UTF-8 CSV with
// header article_id,title,first_paragraph,assigned_topic,annotator_1..k and
// empty annotator cells. Rows are ordered by article_id. NotFoundError for an
// unknown event or topic; PreconditionError for an empty cluster.
QaExport export_qa_sample(const corpus::Store& store, const std::string& event_id,
                          const std::string& topic_id, std::size_t n, std::uint64_t seed,
                          const std::filesystem::path& out,
                          std::size_t annotators = kDefaultAnnotators);

// Re-imports a completed sheet in the export format. Annotator columns are
// the ones whose header starts with "annotator_".
AnnotationSheet parse_annotation_sheet(std::string_view csv_text);

}  // namespace policystory::classify
