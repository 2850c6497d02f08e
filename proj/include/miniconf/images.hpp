#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "miniconf/model.hpp"

namespace miniconf {

inline constexpr const char* kImageMapFile = "image_map.csv";
inline constexpr const char* kImagesDir = "images";
inline constexpr const char* kPlaceholderImage = "static/placeholder.png";

class ImageAttachError : public std::runtime_error {
 public:
  explicit ImageAttachError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

/// uid -> output-relative image path ("images/...").
using ImageMap = std::map<std::string, std::string>;

/// Reads `image_map.csv` (columns uid,image_path) if present. Paths are
/// relative to the input directory or to its images/ folder; each must name
/// an existing .png/.jpg/.jpeg file inside images/.
ImageMap load_image_map(const std::filesystem::path& input_dir);

struct ImageAttachCounts {
  std::size_t from_map = 0;
  std::size_t from_png = 0;
  std::size_t from_jpg = 0;
  std::size_t placeholder = 0;
};

struct ImageAttachResult {
  ConferenceBundle bundle;
  ImageAttachCounts counts;
};

/// Sets every paper's image_path from, in priority order: image_map.csv,
/// images/<uid>.png, images/<uid>.jpg, the placeholder asset.
ImageAttachResult attach_images(ConferenceBundle bundle, const std::filesystem::path& input_dir,
                                const LogSink& log = {});

}  // namespace miniconf
