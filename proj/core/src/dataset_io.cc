/* Copyright 2026 The SAFit Eval Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "safit/dataset_io.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_set>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace safit {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// Collects errors for one record and offers typed field access.
class RecordReader {
 public:
  RecordReader(const json& record, std::string section, std::size_t index,
               std::vector<ValidationError>& errors)
      : record_(record),
        section_(std::move(section)),
        index_(index),
        errors_(errors) {
    if (record_.is_object()) {
      auto it = record_.find("id");
      if (it != record_.end() && it->is_number_integer()) {
        id_ = it->get<std::int64_t>();
      }
    }
  }

  bool IsObject() {
    if (record_.is_object()) return true;
    Fail("invalid_record", "record is not a JSON object");
    return false;
  }

  bool Has(const char* key) const {
    auto it = record_.find(key);
    return it != record_.end() && !it->is_null();
  }

  std::optional<std::int64_t> Int(const char* key, bool required) {
    auto it = record_.find(key);
    if (it == record_.end() || it->is_null()) {
      if (required) Missing(key);
      return std::nullopt;
    }
    if (!it->is_number_integer()) {
      Fail("invalid_field", fmt::format("field '{}' must be an integer", key));
      return std::nullopt;
    }
    return it->get<std::int64_t>();
  }

  std::optional<double> Number(const char* key, bool required) {
    auto it = record_.find(key);
    if (it == record_.end() || it->is_null()) {
      if (required) Missing(key);
      return std::nullopt;
    }
    if (!it->is_number()) {
      Fail("invalid_field", fmt::format("field '{}' must be a number", key));
      return std::nullopt;
    }
    return it->get<double>();
  }

  std::optional<std::string> String(const char* key, bool required) {
    auto it = record_.find(key);
    if (it == record_.end() || it->is_null()) {
      if (required) Missing(key);
      return std::nullopt;
    }
    if (!it->is_string()) {
      Fail("invalid_field", fmt::format("field '{}' must be a string", key));
      return std::nullopt;
    }
    return it->get<std::string>();
  }

  std::optional<bool> Bool(const char* key) {
    auto it = record_.find(key);
    if (it == record_.end() || it->is_null()) return std::nullopt;
    if (it->is_boolean()) return it->get<bool>();
    if (it->is_number_integer()) return it->get<std::int64_t>() != 0;
    Fail("invalid_field", fmt::format("field '{}' must be a boolean", key));
    return std::nullopt;
  }

  // Top-left [x, y, w, h].
  std::optional<std::array<double, 4>> Box(const char* key) {
    auto it = record_.find(key);
    if (it == record_.end() || it->is_null()) {
      Missing(key);
      return std::nullopt;
    }
    if (!it->is_array() || it->size() != 4 ||
        !std::all_of(it->begin(), it->end(),
                     [](const json& v) { return v.is_number(); })) {
      Fail("invalid_bbox", "bbox must be an array of four numbers [x, y, w, h]");
      return std::nullopt;
    }
    std::array<double, 4> b{};
    for (std::size_t i = 0; i < 4; ++i) b[i] = (*it)[i].get<double>();
    if (!std::all_of(b.begin(), b.end(),
                     [](double v) { return std::isfinite(v); }) ||
        !(b[2] > 0.0) || !(b[3] > 0.0)) {
      Fail("invalid_bbox",
           fmt::format("bbox [{}, {}, {}, {}] must have positive width and "
                       "height",
                       b[0], b[1], b[2], b[3]));
      return std::nullopt;
    }
    return b;
  }

  void Missing(const char* key) {
    Fail("missing_field", fmt::format("missing required field '{}'", key));
  }

  void Fail(std::string code, std::string message) {
    failed_ = true;
    errors_.push_back({std::move(code), section_, index_, id_,
                       std::move(message)});
  }

  bool failed() const { return failed_; }
  std::optional<std::int64_t> id() const { return id_; }

 private:
  const json& record_;
  std::string section_;
  std::size_t index_;
  std::vector<ValidationError>& errors_;
  std::optional<std::int64_t> id_;
  bool failed_ = false;
};

json ParseJson(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FileError(fmt::format("invalid JSON: {}", e.what()));
  }
}

const json* ArrayField(const json& root, const char* key,
                       std::vector<ValidationError>& errors) {
  auto it = root.find(key);
  if (it == root.end() || it->is_null()) return nullptr;
  if (!it->is_array()) {
    errors.push_back({"invalid_field", "root", 0, std::nullopt,
                      fmt::format("'{}' must be an array", key)});
    return nullptr;
  }
  return &*it;
}

// Clips `box` to [0,W]x[0,H]. Returns false when it overshoots by more than
// the tolerance.
bool ClipToImage(std::array<double, 4>& box, const ImageInfo& img,
                 bool& clipped) {
  clipped = false;
  if (img.width <= 0 || img.height <= 0) return true;
  double x1 = box[0];
  double y1 = box[1];
  double x2 = box[0] + box[2];
  double y2 = box[1] + box[3];
  const double w = img.width;
  const double h = img.height;
  if (x1 < -kClipTolerancePx || y1 < -kClipTolerancePx ||
      x2 > w + kClipTolerancePx || y2 > h + kClipTolerancePx) {
    return false;
  }
  if (x1 < 0.0 || y1 < 0.0 || x2 > w || y2 > h) {
    clipped = true;
    x1 = std::max(x1, 0.0);
    y1 = std::max(y1, 0.0);
    x2 = std::min(x2, w);
    y2 = std::min(y2, h);
    box = {x1, y1, x2 - x1, y2 - y1};
  }
  return true;
}

std::array<double, 4> TopLeft(const BBox& b) {
  return {b.x1(), b.y1(), b.w(), b.h()};
}

}  // namespace

LoadResult<GroundTruth> ParseGroundTruth(std::string_view json_text) {
  LoadResult<GroundTruth> result;
  auto& gt = result.data;
  auto& errors = result.errors;
  const json root = ParseJson(json_text);
  if (!root.is_object()) {
    errors.push_back({"invalid_root", "root", 0, std::nullopt,
                      "ground truth must be a JSON object"});
    return result;
  }

  const bool plain_coco = !root.contains("schema_version");
  if (!plain_coco) {
    const json& v = root["schema_version"];
    if (!v.is_number_integer() || v.get<int>() != kSchemaVersion) {
      errors.push_back({"unsupported_schema_version", "root", 0, std::nullopt,
                        fmt::format("expected schema_version {}, got {}",
                                    kSchemaVersion, v.dump())});
      return result;
    }
  }

  if (const json* cats = ArrayField(root, "categories", errors)) {
    std::unordered_set<std::int64_t> seen;
    for (std::size_t i = 0; i < cats->size(); ++i) {
      RecordReader r((*cats)[i], "categories", i, errors);
      if (!r.IsObject()) continue;
      auto id = r.Int("id", true);
      auto name = r.String("name", false);
      if (r.failed()) continue;
      if (!seen.insert(*id).second) {
        r.Fail("duplicate_id", fmt::format("duplicate category id {}", *id));
        continue;
      }
      gt.categories.push_back({*id, name.value_or(std::to_string(*id))});
    }
  }

  if (const json* seqs = ArrayField(root, "sequences", errors)) {
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < seqs->size(); ++i) {
      RecordReader r((*seqs)[i], "sequences", i, errors);
      if (!r.IsObject()) continue;
      SequenceMeta meta;
      auto id = r.String("id", true);
      meta.scene = r.String("scene", false).value_or("");
      if (auto lv = r.String("light_vision", false)) {
        meta.light_vision = ParseLightVision(*lv);
        if (!meta.light_vision) {
          r.Fail("invalid_field",
                 fmt::format("unknown light_vision '{}' (expected high, "
                             "medium, low or invisible)",
                             *lv));
        }
      }
      meta.fps = r.Number("fps", false).value_or(0.0);
      meta.width = static_cast<int>(r.Int("width", false).value_or(0));
      meta.height = static_cast<int>(r.Int("height", false).value_or(0));
      if (r.failed()) continue;
      meta.id = *id;
      if (!seen.insert(meta.id).second) {
        r.Fail("duplicate_id", fmt::format("duplicate sequence id '{}'", *id));
        continue;
      }
      gt.sequences.push_back(std::move(meta));
    }
  }

  if (const json* imgs = ArrayField(root, "images", errors)) {
    std::unordered_set<std::int64_t> seen;
    for (std::size_t i = 0; i < imgs->size(); ++i) {
      RecordReader r((*imgs)[i], "images", i, errors);
      if (!r.IsObject()) continue;
      ImageInfo img;
      auto id = r.Int("id", true);
      img.file_name = r.String("file_name", false).value_or("");
      img.sequence_id = r.String("sequence_id", false).value_or("default");
      auto frame = r.Int("frame_id", false);
      if (auto mod = r.String("modality", false)) {
        if (auto m = ParseModality(*mod)) {
          img.modality = *m;
        } else {
          r.Fail("invalid_field",
                 fmt::format("unknown modality '{}' (expected visible or "
                             "thermal)",
                             *mod));
        }
      }
      img.width = static_cast<int>(r.Int("width", false).value_or(0));
      img.height = static_cast<int>(r.Int("height", false).value_or(0));
      if (r.failed()) continue;
      img.id = *id;
      img.frame_id = frame.value_or(*id);
      if (!seen.insert(img.id).second) {
        r.Fail("duplicate_id", fmt::format("duplicate image id {}", *id));
        continue;
      }
      gt.images.push_back(std::move(img));
    }
  }

  // Sequences referenced by images but absent from the table get defaults.
  {
    std::set<std::string> known;
    for (const auto& s : gt.sequences) known.insert(s.id);
    for (const auto& img : gt.images) {
      if (known.insert(img.sequence_id).second) {
        SequenceMeta meta;
        meta.id = img.sequence_id;
        meta.width = img.width;
        meta.height = img.height;
        gt.sequences.push_back(std::move(meta));
      }
    }
  }
  gt.Reindex();

  std::unordered_set<std::int64_t> category_ids;
  for (const auto& c : gt.categories) category_ids.insert(c.id);

  if (const json* anns = ArrayField(root, "annotations", errors)) {
    std::unordered_set<std::int64_t> seen;
    std::set<std::tuple<std::string, std::int64_t, std::int64_t, int>>
        track_keys;
    for (std::size_t i = 0; i < anns->size(); ++i) {
      RecordReader r((*anns)[i], "annotations", i, errors);
      if (!r.IsObject()) continue;
      auto id = r.Int("id", true);
      auto image_id = r.Int("image_id", true);
      auto category_id = r.Int("category_id", true);
      auto box = r.Box("bbox");
      auto track = r.Int("track_id", false);
      auto ignore = r.Bool("ignore");
      auto iscrowd = r.Bool("iscrowd");
      auto interpolated = r.Bool("interpolated");
      auto clipped_flag = r.Bool("clipped");
      auto occlusion = r.String("occlusion", false);
      if (r.failed()) continue;

      if (!seen.insert(*id).second) {
        r.Fail("duplicate_id", fmt::format("duplicate annotation id {}", *id));
        continue;
      }
      const ImageInfo* img = gt.FindImage(*image_id);
      if (img == nullptr) {
        r.Fail("unknown_image",
               fmt::format("annotation {} references unknown image_id {}", *id,
                           *image_id));
        continue;
      }
      if (!category_ids.empty() && !category_ids.contains(*category_id)) {
        r.Fail("unknown_category",
               fmt::format("annotation {} references unknown category_id {}",
                           *id, *category_id));
        continue;
      }
      bool clipped = false;
      if (!ClipToImage(*box, *img, clipped)) {
        r.Fail("bbox_out_of_bounds",
               fmt::format("annotation {} bbox [{}, {}, {}, {}] exceeds image "
                           "{}x{} by more than {} px",
                           *id, (*box)[0], (*box)[1], (*box)[2], (*box)[3],
                           img->width, img->height, kClipTolerancePx));
        continue;
      }
      if (!((*box)[2] > 0.0) || !((*box)[3] > 0.0)) {
        r.Fail("invalid_bbox",
               fmt::format("annotation {} bbox has zero area after clipping",
                           *id));
        continue;
      }
      if (track) {
        auto key = std::make_tuple(img->sequence_id, img->frame_id, *track,
                                   static_cast<int>(img->modality));
        if (!track_keys.insert(key).second) {
          r.Fail("duplicate_track_entry",
                 fmt::format("track {} appears twice in sequence '{}' frame "
                             "{} ({})",
                             *track, img->sequence_id, img->frame_id,
                             ModalityName(img->modality)));
          continue;
        }
      }

      Annotation a;
      a.id = *id;
      a.image_id = *image_id;
      a.sequence_id = img->sequence_id;
      a.frame_id = img->frame_id;
      a.track_id = track;
      a.class_id = *category_id;
      a.bbox = BBox::FromTopLeft((*box)[0], (*box)[1], (*box)[2], (*box)[3]);
      a.modality = img->modality;
      a.ignore = ignore.value_or(false) || iscrowd.value_or(false);
      a.interpolated = interpolated.value_or(false);
      a.clipped = clipped || clipped_flag.value_or(false);
      a.occlusion = occlusion;
      gt.annotations.push_back(std::move(a));
    }
  }

  if (gt.categories.empty()) {
    std::set<std::int64_t> ids;
    for (const auto& a : gt.annotations) ids.insert(a.class_id);
    for (auto id : ids) gt.categories.push_back({id, std::to_string(id)});
  }
  return result;
}

LoadResult<Predictions> ParsePredictions(std::string_view json_text,
                                         const GroundTruth* gt) {
  LoadResult<Predictions> result;
  auto& errors = result.errors;
  const json root = ParseJson(json_text);
  const json* list = nullptr;
  if (root.is_array()) {
    list = &root;
  } else if (root.is_object()) {
    if (root.contains("schema_version") &&
        (!root["schema_version"].is_number_integer() ||
         root["schema_version"].get<int>() != kSchemaVersion)) {
      errors.push_back({"unsupported_schema_version", "root", 0, std::nullopt,
                        fmt::format("expected schema_version {}",
                                    kSchemaVersion)});
      return result;
    }
    list = ArrayField(root, "detections", errors);
  } else {
    errors.push_back({"invalid_root", "root", 0, std::nullopt,
                      "predictions must be a JSON array or object"});
  }
  if (list == nullptr) return result;

  for (std::size_t i = 0; i < list->size(); ++i) {
    RecordReader r((*list)[i], "detections", i, errors);
    if (!r.IsObject()) continue;
    auto image_id = r.Int("image_id", true);
    auto category_id = r.Int("category_id", true);
    auto box = r.Box("bbox");
    auto score = r.Number("score", true);
    auto frame = r.Int("frame_id", false);
    std::optional<Modality> modality;
    if (auto mod = r.String("modality", false)) {
      modality = ParseModality(*mod);
      if (!modality) {
        r.Fail("invalid_field", fmt::format("unknown modality '{}'", *mod));
      }
    }
    if (r.failed()) continue;
    if (!(*score >= 0.0 && *score <= 1.0)) {
      r.Fail("score_out_of_range",
             fmt::format("detection #{} (image_id {}) has score {} outside "
                         "[0, 1]",
                         i, *image_id, *score));
      continue;
    }
    Detection d;
    d.image_id = *image_id;
    d.class_id = *category_id;
    d.bbox = BBox::FromTopLeft((*box)[0], (*box)[1], (*box)[2], (*box)[3]);
    d.score = *score;
    d.frame_id = frame.value_or(*image_id);
    d.modality = modality.value_or(Modality::kVisible);
    if (gt != nullptr) {
      const ImageInfo* img = gt->FindImage(*image_id);
      if (img == nullptr) {
        r.Fail("unknown_image",
               fmt::format("detection #{} references unknown image_id {}", i,
                           *image_id));
        continue;
      }
      d.frame_id = img->frame_id;
      d.modality = img->modality;
    }
    result.data.detections.push_back(d);
  }
  return result;
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError(fmt::format("cannot open '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteTextFile(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FileError(fmt::format("cannot write '{}'", path));
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw FileError(fmt::format("failed writing '{}'", path));
}

LoadResult<GroundTruth> LoadGroundTruth(const std::string& path) {
  const std::string text = ReadTextFile(path);
  try {
    return ParseGroundTruth(text);
  } catch (const FileError& e) {
    throw FileError(fmt::format("{}: {}", path, e.what()));
  }
}

LoadResult<Predictions> LoadPredictions(const std::string& path,
                                        const GroundTruth* gt) {
  const std::string text = ReadTextFile(path);
  try {
    return ParsePredictions(text, gt);
  } catch (const FileError& e) {
    throw FileError(fmt::format("{}: {}", path, e.what()));
  }
}

std::string SerializeGroundTruth(const GroundTruth& gt) {
  ordered_json root;
  root["schema_version"] = kSchemaVersion;

  ordered_json seqs = ordered_json::array();
  for (const auto& s : gt.sequences) {
    ordered_json j;
    j["id"] = s.id;
    j["scene"] = s.scene;
    if (s.light_vision) {
      j["light_vision"] = LightVisionName(*s.light_vision);
    } else {
      j["light_vision"] = nullptr;
    }
    j["fps"] = s.fps;
    j["width"] = s.width;
    j["height"] = s.height;
    seqs.push_back(std::move(j));
  }
  root["sequences"] = std::move(seqs);

  ordered_json imgs = ordered_json::array();
  for (const auto& img : gt.images) {
    ordered_json j;
    j["id"] = img.id;
    j["file_name"] = img.file_name;
    j["sequence_id"] = img.sequence_id;
    j["frame_id"] = img.frame_id;
    j["modality"] = ModalityName(img.modality);
    j["width"] = img.width;
    j["height"] = img.height;
    imgs.push_back(std::move(j));
  }
  root["images"] = std::move(imgs);

  ordered_json cats = ordered_json::array();
  for (const auto& c : gt.categories) {
    ordered_json j;
    j["id"] = c.id;
    j["name"] = c.name;
    cats.push_back(std::move(j));
  }
  root["categories"] = std::move(cats);

  ordered_json anns = ordered_json::array();
  for (const auto& a : gt.annotations) {
    ordered_json j;
    j["id"] = a.id;
    j["image_id"] = a.image_id;
    j["category_id"] = a.class_id;
    j["bbox"] = TopLeft(a.bbox);
    j["area"] = a.bbox.area();
    if (a.track_id) {
      j["track_id"] = *a.track_id;
    } else {
      j["track_id"] = nullptr;
    }
    j["ignore"] = a.ignore;
    j["interpolated"] = a.interpolated;
    if (a.clipped) j["clipped"] = true;
    if (a.occlusion) j["occlusion"] = *a.occlusion;
    anns.push_back(std::move(j));
  }
  root["annotations"] = std::move(anns);
  return root.dump(1) + "\n";
}

std::string SerializePredictions(const Predictions& preds) {
  ordered_json root;
  root["schema_version"] = kSchemaVersion;
  ordered_json dets = ordered_json::array();
  for (const auto& d : preds.detections) {
    ordered_json j;
    j["image_id"] = d.image_id;
    j["category_id"] = d.class_id;
    j["bbox"] = TopLeft(d.bbox);
    j["score"] = d.score;
    dets.push_back(std::move(j));
  }
  root["detections"] = std::move(dets);
  return root.dump(1) + "\n";
}

GroundTruth FilterByModality(const GroundTruth& gt, Modality m) {
  GroundTruth out;
  out.schema_version = gt.schema_version;
  out.categories = gt.categories;
  std::set<std::string> used_sequences;
  for (const auto& img : gt.images) {
    if (img.modality != m) continue;
    out.images.push_back(img);
    used_sequences.insert(img.sequence_id);
  }
  for (const auto& s : gt.sequences) {
    if (used_sequences.contains(s.id)) out.sequences.push_back(s);
  }
  for (const auto& a : gt.annotations) {
    if (a.modality == m) out.annotations.push_back(a);
  }
  out.Reindex();
  return out;
}

}  // namespace safit
