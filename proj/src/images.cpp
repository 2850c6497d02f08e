#include "miniconf/images.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "miniconf/csv.hpp"

namespace fs = std::filesystem;

namespace miniconf {

namespace {

std::string join(const std::vector<std::string>& lines) {
  std::string out = "image attachment failed:";
  for (const auto& l : lines) out += "\n  " + l;
  return out;
}

bool has_image_extension(const fs::path& p) {
  auto ext = p.extension().string();
  for (auto& c : ext) c = char(std::tolower(static_cast<unsigned char>(c)));
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

// Regular files under images/, as generic relative paths ("images/a/b.png").
std::set<std::string> scan_images(const fs::path& input_dir) {
  std::set<std::string> files;
  const fs::path root = input_dir / kImagesDir;
  std::error_code ec;
  if (!fs::exists(root, ec)) return files;
  if (!fs::is_directory(root, ec))
    throw ImageAttachError({fmt::format("{} is not a directory", root.string())});
  fs::recursive_directory_iterator it(root, ec), end;
  if (ec) throw ImageAttachError({fmt::format("cannot read {}: {}", root.string(), ec.message())});
  for (; it != end; it.increment(ec)) {
    if (ec) throw ImageAttachError({fmt::format("cannot read {}: {}", root.string(), ec.message())});
    if (it->is_regular_file())
      files.insert((fs::path(kImagesDir) / fs::relative(it->path(), root)).generic_string());
  }
  return files;
}

std::optional<std::string> normalize_map_path(std::string_view raw) {
  fs::path p = fs::path(std::string(raw)).lexically_normal();
  if (p.empty() || p.is_absolute()) return std::nullopt;
  if (p.begin()->string() != kImagesDir) p = fs::path(kImagesDir) / p;
  p = p.lexically_normal();
  for (const auto& part : p)
    if (part == "..") return std::nullopt;
  return p.generic_string();
}

ImageMap load_image_map_impl(const fs::path& input_dir, const std::set<std::string>& available) {
  ImageMap map;
  const fs::path path = input_dir / kImageMapFile;
  std::error_code ec;
  if (!fs::exists(path, ec)) return map;

  std::ifstream in(path, std::ios::binary);
  if (!in) throw ImageAttachError({fmt::format("cannot open {}", kImageMapFile)});
  std::ostringstream ss;
  ss << in.rdbuf();

  std::vector<csv::Record> records;
  try {
    records = csv::parse(ss.str());
  } catch (const csv::ParseError& e) {
    throw ImageAttachError({fmt::format("{} line {}: {}", kImageMapFile, e.line(), e.what())});
  }
  if (records.empty()) return map;

  std::optional<std::size_t> uid_col, path_col;
  const auto& header = records.front().fields;
  for (std::size_t i = 0; i < header.size(); ++i) {
    auto name = csv::trim(header[i]);
    if (name == "uid") uid_col = i;
    if (name == "image_path") path_col = i;
  }
  if (!uid_col || !path_col)
    throw ImageAttachError({fmt::format("{} needs columns uid,image_path", kImageMapFile)});

  std::vector<std::string> problems;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() != header.size()) {
      problems.push_back(fmt::format("{} row {}: expected {} fields", kImageMapFile, rec.line,
                                     header.size()));
      continue;
    }
    auto uid = csv::trim(rec.fields[*uid_col]);
    auto raw = csv::trim(rec.fields[*path_col]);
    auto norm = normalize_map_path(raw);
    if (!norm) {
      problems.push_back(fmt::format("{} row {}: path '{}' must stay inside {}/", kImageMapFile,
                                     rec.line, raw, kImagesDir));
    } else if (!has_image_extension(*norm)) {
      problems.push_back(fmt::format("{} row {}: '{}' is not a PNG or JPEG file", kImageMapFile,
                                     rec.line, raw));
    } else if (!available.count(*norm)) {
      problems.push_back(
          fmt::format("{} row {}: '{}' does not exist", kImageMapFile, rec.line, *norm));
    } else {
      map[uid] = *norm;
    }
  }
  if (!problems.empty()) throw ImageAttachError(std::move(problems));
  return map;
}

}  // namespace

ImageAttachError::ImageAttachError(std::vector<std::string> problems)
    : std::runtime_error(join(problems)), problems_(std::move(problems)) {}

ImageMap load_image_map(const fs::path& input_dir) {
  return load_image_map_impl(input_dir, scan_images(input_dir));
}

ImageAttachResult attach_images(ConferenceBundle bundle, const fs::path& input_dir,
                                const LogSink& log) {
  const auto available = scan_images(input_dir);
  const auto map = load_image_map_impl(input_dir, available);

  std::set<std::string> uids;
  for (const auto& p : bundle.papers) uids.insert(p.uid);
  for (const auto& [uid, _] : map)
    if (!uids.count(uid))
      emit(log, fmt::format("warning: {} names unknown paper '{}'", kImageMapFile, uid));

  ImageAttachCounts counts;
  for (auto& p : bundle.papers) {
    std::string png = fmt::format("{}/{}.png", kImagesDir, p.uid);
    std::string jpg = fmt::format("{}/{}.jpg", kImagesDir, p.uid);
    if (auto it = map.find(p.uid); it != map.end()) {
      p.image_path = it->second;
      ++counts.from_map;
    } else if (available.count(png)) {
      p.image_path = png;
      ++counts.from_png;
    } else if (available.count(jpg)) {
      p.image_path = jpg;
      ++counts.from_jpg;
    } else {
      p.image_path = kPlaceholderImage;
      ++counts.placeholder;
    }
  }
  emit(log, fmt::format("images: {} from map, {} png, {} jpg, {} placeholder", counts.from_map,
                        counts.from_png, counts.from_jpg, counts.placeholder));
  return {std::move(bundle), counts};
}

}  // namespace miniconf
