#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "miniconf/chat.hpp"
#include "miniconf/images.hpp"
#include "miniconf/ingest.hpp"
#include "miniconf/projection.hpp"
#include "miniconf/site.hpp"

namespace miniconf {

inline constexpr const char* kWordVectorsFile = "wordvecs.txt";

struct BuildOptions {
  std::filesystem::path input_dir;
  std::filesystem::path output_dir;
  TsneParams tsne;
  // Reuse <output_dir>/data/layout.json instead of embedding + projecting.
  bool skip_projection = false;
  bool provision_chat = false;
  std::string chat_token;
  int chat_max_retries = 3;
  RenderOptions render;
};

struct BuildResult {
  ValidationReport report;
  ImageAttachCounts images;
  Layout layout;
  std::optional<ProvisionReport> chat;
  SiteManifest manifest;
};

/// ingest -> attach images -> embed -> project -> (provision) -> render.
BuildResult build_site(const BuildOptions& options, const LogSink& log = {});

}  // namespace miniconf
