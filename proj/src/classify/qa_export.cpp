#include "policystory/classify/qa_export.hpp"

#include <algorithm>
#include <random>

#include "policystory/util/csv.hpp"
#include "policystory/util/errors.hpp"
#include "policystory/util/fs.hpp"
#include "policystory/util/random.hpp"
#include "policystory/util/text.hpp"

namespace policystory::classify {

QaExport export_qa_sample(const corpus::Store& store, const std::string& event_id,
                          const std::string& topic_id, std::size_t n, std::uint64_t seed,
                          const std::filesystem::path& out, std::size_t annotators) {
  const auto event = store.get_event(event_id);
  if (!event.taxonomy.contains(topic_id)) {
    throw NotFoundError("topic '" + topic_id + "' not in taxonomy of " + event_id);
  }

  std::vector<corpus::Article> cluster;
  for (auto& a : store.list_articles(event_id)) {
    if (a.topic_id == topic_id) cluster.push_back(std::move(a));
  }
  if (cluster.empty()) {
    throw PreconditionError("cluster " + event_id + "/" + topic_id + " is empty");
  }
  std::sort(cluster.begin(), cluster.end(),
            [](const auto& a, const auto& b) { return a.article_id < b.article_id; });

  std::mt19937_64 rng(seed);
  const auto picked = sample_indices(cluster.size(), n, rng);

  std::vector<csv::Row> rows;
  csv::Row header{"article_id", "title", "first_paragraph", "assigned_topic"};
  for (std::size_t k = 1; k <= annotators; ++k) header.push_back("annotator_" + std::to_string(k));
  rows.push_back(header);
  for (auto i : picked) {
    const auto& a = cluster[i];
    csv::Row row{a.article_id, a.title, a.first_paragraph, topic_id};
    row.resize(header.size());
    rows.push_back(std::move(row));
  }
  write_file_atomic(out, csv::format(rows));
  return {out, picked.size(), cluster.size()};
}

AnnotationSheet parse_annotation_sheet(std::string_view csv_text) {
  auto rows = csv::parse(csv_text);
  if (rows.empty()) throw ValidationError("annotation sheet: missing header row");
  const auto& header = rows.front();
  std::size_t id_col = header.size();
  std::vector<std::size_t> annotator_cols;
  for (std::size_t c = 0; c < header.size(); ++c) {
    auto name = text::trim(header[c]);
    if (c == 0 && name.substr(0, 3) == "\xEF\xBB\xBF") name.remove_prefix(3);
    if (name == "article_id") id_col = c;
    if (name.substr(0, 10) == "annotator_") annotator_cols.push_back(c);
  }
  if (id_col == header.size()) throw ValidationError("annotation sheet: no article_id column");

  AnnotationSheet sheet;
  sheet.annotator_count = annotator_cols.size();
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() == 1 && text::trim(row[0]).empty()) continue;  // blank line
    AnnotatedItem item;
    item.article_id = id_col < row.size() ? row[id_col] : "";
    for (auto c : annotator_cols) {
      if (c >= row.size()) continue;
      auto label = text::trim(row[c]);
      if (!label.empty()) item.labels.emplace_back(label);
    }
    sheet.items.push_back(std::move(item));
  }
  return sheet;
}

}  // namespace policystory::classify
