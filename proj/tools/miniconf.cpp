// Command-line front end: build, validate, embed, project, ical, provision, conformance.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "miniconf/chat.hpp"
#include "miniconf/conformance.hpp"
#include "miniconf/embedding.hpp"
#include "miniconf/images.hpp"
#include "miniconf/ingest.hpp"
#include "miniconf/pipeline.hpp"
#include "miniconf/projection.hpp"
#include "miniconf/schedule.hpp"
#include "miniconf/site.hpp"

namespace fs = std::filesystem;
using namespace miniconf;

namespace {

void log_line(std::string_view line) { std::cerr << line << '\n'; }

std::string chat_token_from_env() {
  const char* token = std::getenv("CHAT_TOKEN");
  return token ? token : "";
}

void write_or_print(const std::string& out, const std::string& content) {
  if (out.empty() || out == "-") {
    std::cout << content;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + out);
  f << content;
}

void add_tsne_options(CLI::App* cmd, TsneParams& p) {
  cmd->add_option("--seed", p.seed, "Random seed for the layout")->capture_default_str();
  cmd->add_option("--perplexity", p.perplexity, "tSNE perplexity")->capture_default_str();
  cmd->add_option("--iterations", p.iterations, "Gradient descent iterations")->capture_default_str();
  cmd->add_option("--learning-rate", p.learning_rate, "Gradient descent step size")
      ->capture_default_str();
  cmd->add_option("--exaggeration", p.early_exaggeration_factor, "Early exaggeration factor")
      ->capture_default_str();
  cmd->add_option("--exaggeration-iters", p.early_exaggeration_iters,
                  "Iterations with exaggerated affinities")
      ->capture_default_str();
}

std::string embeddings_to_json(const CorpusEmbedding& corpus) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& e : corpus.rows)
    arr.push_back({{"uid", e.paper_uid}, {"coverage", e.coverage}, {"vector", e.vector}});
  return arr.dump() + "\n";
}

std::vector<DocumentEmbedding> embeddings_from_json(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  auto arr = nlohmann::json::parse(in);
  std::vector<DocumentEmbedding> out;
  for (const auto& item : arr) {
    DocumentEmbedding e;
    e.paper_uid = item.at("uid").get<std::string>();
    e.coverage = item.value("coverage", 1.0);
    e.vector = item.at("vector").get<std::vector<double>>();
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Static site generator for virtual conferences"};
  app.require_subcommand(1);

  BuildOptions build;
  std::string template_dir;
  auto* build_cmd = app.add_subcommand("build", "Run the full pipeline and write the site");
  build_cmd->add_option("--in", build.input_dir, "Conference input directory")->required();
  build_cmd->add_option("--out", build.output_dir, "Output directory")->required();
  add_tsne_options(build_cmd, build.tsne);
  build_cmd->add_flag("--skip-projection", build.skip_projection,
                      "Reuse <out>/data/layout.json instead of recomputing the layout");
  build_cmd->add_flag("--provision-chat", build.provision_chat,
                      "Create one chat channel per paper (token read from CHAT_TOKEN)");
  build_cmd->add_option("--templates", template_dir, "Directory of replacement page templates");

  fs::path validate_in;
  auto* validate_cmd = app.add_subcommand("validate", "Check conference inputs and list problems");
  validate_cmd->add_option("--in", validate_in, "Conference input directory")->required();

  fs::path embed_in;
  std::string embed_out;
  auto* embed_cmd = app.add_subcommand("embed", "Embed paper abstracts with word vectors");
  embed_cmd->add_option("--in", embed_in, "Conference input directory")->required();
  embed_cmd->add_option("--out", embed_out, "embeddings.json destination (default stdout)");

  fs::path project_in;
  std::string project_out;
  TsneParams project_params;
  auto* project_cmd = app.add_subcommand("project", "Project embeddings to a 2-D layout.json");
  project_cmd->add_option("--embeddings", project_in, "embeddings.json from `embed`")->required();
  project_cmd->add_option("--out", project_out, "layout.json destination (default stdout)");
  add_tsne_options(project_cmd, project_params);

  fs::path ical_in;
  std::string ical_out;
  auto* ical_cmd = app.add_subcommand("ical", "Export the schedule as an iCalendar file");
  ical_cmd->add_option("--in", ical_in, "Conference input directory")->required();
  ical_cmd->add_option("--out", ical_out, "Destination (default stdout)");

  fs::path provision_in;
  int provision_parallel = 1;
  int provision_retries = 3;
  auto* provision_cmd = app.add_subcommand("provision", "Create chat channels for every paper");
  provision_cmd->add_option("--in", provision_in, "Conference input directory")->required();
  provision_cmd->add_option("--parallel", provision_parallel, "Requests in flight")
      ->check(CLI::Range(1, 64));
  provision_cmd->add_option("--max-retries", provision_retries, "Retries per channel")
      ->check(CLI::Range(0, 20));

  fs::path conformance_in;
  fs::path conformance_out;
  ConformanceOptions conformance_opts;
  auto* conformance_cmd =
      app.add_subcommand("conformance", "Write reference schedule and keyword outputs for frontend checks");
  conformance_cmd->add_option("--in", conformance_in, "Conference input directory")->required();
  conformance_cmd->add_option("--out", conformance_out, "Destination directory")->required();
  conformance_cmd->add_option("--zone", conformance_opts.zones, "Extra IANA zone (repeatable)");
  conformance_cmd->add_option("--subsets", conformance_opts.random_subsets, "Random keyword selections")
      ->capture_default_str();
  conformance_cmd->add_option("--seed", conformance_opts.seed, "Seed for the random selections")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*build_cmd) {
      if (!template_dir.empty()) build.render.template_dir = template_dir;
      if (build.provision_chat) build.chat_token = chat_token_from_env();
      auto result = build_site(build, log_line);
      if (result.chat && !result.chat->failed.empty()) {
        for (const auto& f : result.chat->failed)
          std::cerr << "chat: failed to create " << f.channel << ": " << f.message << '\n';
        return 1;
      }
    } else if (*validate_cmd) {
      ValidationReport report;
      try {
        load_conference(validate_in, &report);
      } catch (const IngestError& e) {
        report = e.report();
      }
      for (const auto& e : report.errors) std::cout << "error: " << e.to_string() << '\n';
      for (const auto& w : report.warnings) std::cout << "warning: " << w.to_string() << '\n';
      std::cout << report.errors.size() << " error(s), " << report.warnings.size() << " warning(s)\n";
      return report.ok() ? 0 : 1;
    } else if (*embed_cmd) {
      auto bundle = load_conference(embed_in);
      auto table = load_word_vectors(embed_in / kWordVectorsFile);
      auto corpus = embed_corpus(bundle, table, log_line);
      write_or_print(embed_out, embeddings_to_json(corpus));
    } else if (*project_cmd) {
      auto embeddings = embeddings_from_json(project_in);
      log_line("project: " + std::to_string(embeddings.size()) + " embedding(s)");
      auto layout = project_corpus(embeddings, project_params, log_line);
      std::vector<std::string> uids;
      for (const auto& e : embeddings) uids.push_back(e.paper_uid);
      write_or_print(project_out, layout_json(uids, layout));
    } else if (*ical_cmd) {
      write_or_print(ical_out, export_ical(load_conference(ical_in)));
    } else if (*conformance_cmd) {
      auto bundle = load_conference(conformance_in);
      for (const auto& f : conformance_fixtures(bundle, conformance_opts)) {
        auto path = conformance_out / f.path;
        fs::create_directories(path.parent_path());
        write_or_print(path.string(), f.content);
      }
    } else if (*provision_cmd) {
      auto bundle = load_conference(provision_in);
      if (!bundle.config.chat_server_url) {
        std::cerr << "conference.yml has no chat_server_url\n";
        return 1;
      }
      ChatServerClient client;
      client.base_url = *bundle.config.chat_server_url;
      client.auth_token = chat_token_from_env();
      client.max_in_flight = provision_parallel;
      client.max_retries = provision_retries;
      auto report = provision_channels(bundle.papers, client, log_line);
      for (const auto& f : report.failed)
        std::cerr << "chat: failed to create " << f.channel << ": " << f.message << '\n';
      return report.failed.empty() ? 0 : 1;
    }
  } catch (const IngestError& e) {
    std::cerr << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
