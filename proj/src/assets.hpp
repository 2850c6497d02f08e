#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace miniconf::assets {

struct Asset {
  std::string path;
  std::string bytes;
};

/// Shipped under static/, ordered by path.
std::vector<Asset> static_assets();

/// Built-in page template by name; empty for unknown names.
std::string_view template_text(std::string_view name);

}  // namespace miniconf::assets
