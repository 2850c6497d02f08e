#include "miniconf/pipeline.hpp"

#include <fmt/format.h>

#include "miniconf/embedding.hpp"

namespace fs = std::filesystem;

namespace miniconf {

BuildResult build_site(const BuildOptions& options, const LogSink& log) {
  BuildResult result;
  auto bundle = load_conference(options.input_dir, &result.report);
  emit(log, fmt::format("ingest: {} paper(s), {} event(s), {} warning(s)", bundle.papers.size(),
                        bundle.events.size(), result.report.warnings.size()));
  for (const auto& w : result.report.warnings) emit(log, "warning: " + w.to_string());

  auto attached = attach_images(std::move(bundle), options.input_dir, log);
  bundle = std::move(attached.bundle);
  result.images = attached.counts;

  if (options.skip_projection) {
    auto path = options.output_dir / "data" / "layout.json";
    result.layout = layout_for_bundle(bundle, load_layout_json(path));
    emit(log, fmt::format("projection: reused {}", path.string()));
  } else if (bundle.papers.empty()) {
    emit(log, "projection: no papers, nothing to project");
  } else {
    auto table_path = options.input_dir / kWordVectorsFile;
    if (!fs::exists(table_path))
      throw WordVectorError(fmt::format(
          "{} not found in {}; supply word vectors or rerun with --skip-projection", kWordVectorsFile,
          options.input_dir.string()));
    auto table = load_word_vectors(table_path);
    emit(log, fmt::format("embedding: {} word vectors of dimension {}", table.size(), table.dimension()));
    auto corpus = embed_corpus(bundle, table, log);
    result.layout = project_corpus(corpus.rows, options.tsne, log);
  }

  if (options.provision_chat) {
    if (!bundle.config.chat_server_url)
      throw ChatConfigError("--provision-chat needs chat_server_url in conference.yml");
    ChatServerClient client;
    client.base_url = *bundle.config.chat_server_url;
    client.auth_token = options.chat_token;
    client.max_retries = options.chat_max_retries;
    result.chat = provision_channels(bundle.papers, client, log);
  }

  result.manifest = render_site(bundle, result.layout, options.output_dir, options.render);
  emit(log, fmt::format("render: {} file(s) written to {}", result.manifest.entries.size(),
                        options.output_dir.string()));
  return result;
}

}  // namespace miniconf
