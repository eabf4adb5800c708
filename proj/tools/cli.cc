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

#include "cli.h"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "safit/curves.h"
#include "safit/dataset_io.h"
#include "safit/evaluator.h"
#include "safit/homography.h"
#include "safit/mask_io.h"
#include "safit/masks.h"
#include "safit/report_io.h"
#include "safit/stats.h"
#include "safit/track.h"

namespace safit::cli {
namespace {

namespace fs = std::filesystem;

constexpr const char* kVersion = "0.1.0";

// Bad flag values or combinations detected after CLI11 parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Record-level validation failures already reported to stderr.
class ValidationFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void ReportError(std::ostream& err, std::string_view kind,
                 std::string_view message) {
  err << "error[" << kind << "]: " << message << "\n";
  nlohmann::ordered_json j;
  j["error"] = kind;
  j["message"] = message;
  err << j.dump() << "\n";
}

void ReportValidation(std::ostream& err, std::string_view file,
                      const std::vector<ValidationError>& errors) {
  for (const auto& e : errors) {
    err << "error[schema]: " << file << ": " << e.section << " #" << e.index;
    if (e.record_id) err << " (id " << *e.record_id << ")";
    err << ": " << e.message << "\n";
    auto j = nlohmann::ordered_json::parse(e.ToJsonLine());
    j["file"] = file;
    err << j.dump() << "\n";
  }
}

int DefaultWorkers() {
  if (const char* env = std::getenv(kWorkersEnv)) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (const std::exception&) {
    }
  }
  return 1;
}

std::string UtcNow() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Run metadata lives beside the artifact so the artifact itself stays
// byte-reproducible.
void WriteSidecar(const std::string& artifact, std::string_view subcommand,
                  const std::vector<std::string>& args) {
  nlohmann::ordered_json j;
  j["tool"] = "safit-eval";
  j["version"] = kVersion;
  j["subcommand"] = subcommand;
  j["args"] = args;
  j["created_utc"] = UtcNow();
  WriteTextFile(artifact + ".meta.json", j.dump(2) + "\n");
}

GroundTruth LoadGtOrFail(const std::string& path, std::ostream& err) {
  auto loaded = LoadGroundTruth(path);
  if (!loaded.ok()) {
    ReportValidation(err, path, loaded.errors);
    throw ValidationFailed(fmt::format("{} has {} invalid record(s)", path,
                                       loaded.errors.size()));
  }
  return std::move(loaded.data);
}

MeasureParams MakeParams(double c, const std::optional<double>& k) {
  MeasureParams p;
  p.c = c;
  p.k = k;
  p.Validate();
  return p;
}

std::optional<Modality> ParseModalityFlag(const std::string& s) {
  if (s.empty() || s == "all") return std::nullopt;
  auto m = ParseModality(s);
  if (!m) throw UsageError(fmt::format("unknown modality '{}'", s));
  return m;
}

struct CommonMeasureFlags {
  std::string measure = "safit";
  double c = 32.0;
  std::optional<double> k;

  void Add(CLI::App* app, const std::string& default_measure) {
    measure = default_measure;
    app->add_option("--measure", measure,
                    "Affinity measure: iou, giou, diou, ciou, nwd, safit, "
                    "safit_s, safit_g")
        ->capture_default_str();
    app->add_option("--c", c, "SAFit size-aware constant C (px)")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app->add_option("--k", k,
                    "NWD normalisation constant K (px) for --measure nwd; "
                    "defaults to C")
        ->check(CLI::PositiveNumber);
  }
};

struct EvaluateArgs {
  std::string gt;
  std::string pred;
  std::string out;
  std::string format = "json";
  CommonMeasureFlags measure;
  std::vector<double> thresholds = DefaultThresholds();
  int max_dets = 300;
  int recall_points = 101;
  std::string modality;
  std::string light_vision;
  std::vector<std::int64_t> classes;
  bool ignore_interpolated = false;
  int workers = 1;
};

int RunEvaluate(const EvaluateArgs& a, const std::vector<std::string>& args,
                std::ostream& out, std::ostream& err) {
  EvalConfig config;
  config.measure = ParseMeasure(a.measure.measure);
  config.params = MakeParams(a.measure.c, a.measure.k);
  config.thresholds = a.thresholds;
  config.max_detections = a.max_dets;
  config.recall_points = a.recall_points;
  config.modality = ParseModalityFlag(a.modality);
  if (!a.light_vision.empty()) {
    config.light_vision = ParseLightVision(a.light_vision);
    if (!config.light_vision) {
      throw UsageError(fmt::format("unknown light vision '{}'", a.light_vision));
    }
  }
  config.classes = a.classes;
  config.include_interpolated = !a.ignore_interpolated;
  config.workers = a.workers;
  config.Validate();

  auto gt_loaded = LoadGroundTruth(a.gt);
  auto pred_loaded = LoadPredictions(a.pred, &gt_loaded.data);
  if (!gt_loaded.ok() || !pred_loaded.ok()) {
    ReportValidation(err, a.gt, gt_loaded.errors);
    ReportValidation(err, a.pred, pred_loaded.errors);
    throw ValidationFailed("input validation failed");
  }

  const EvalReport report =
      Evaluate(gt_loaded.data, pred_loaded.data, config);
  const std::string payload =
      a.format == "csv" ? ReportToCsv(report) : ReportToJson(report);
  WriteTextFile(a.out, payload);
  WriteSidecar(a.out, "evaluate", args);

  auto show = [](const std::optional<double>& v) {
    return v ? fmt::format("{:.4f}", *v) : std::string("n/a");
  };
  if (!report.defined) {
    out << "report undefined: ground truth has no usable boxes\n";
  } else {
    out << fmt::format("measure={} AP={} AP50={} AP75={} AR={}\n",
                       MeasureName(report.measure), show(report.overall.ap),
                       show(report.overall.ap50), show(report.overall.ap75),
                       show(report.overall.ar));
  }
  return kExitOk;
}

struct CurvesArgs {
  std::vector<double> sizes = {4, 8, 16, 32, 64, 128};
  int max_dev = 20;
  std::vector<std::string> measures = {"iou"};
  double c = 32.0;
  std::optional<double> k;
  std::string out;
};

int RunCurves(const CurvesArgs& a, const std::vector<std::string>& args,
              std::ostream& out) {
  const MeasureParams params = MakeParams(a.c, a.k);
  if (a.max_dev < 0) throw UsageError("--max-dev must be >= 0");
  std::vector<CurvePoint> points;
  for (const auto& name : a.measures) {
    const Measure m = ParseMeasure(name);
    auto sweep = DeviationSweep(a.sizes, a.max_dev, m, params);
    points.insert(points.end(), sweep.begin(), sweep.end());
  }
  WriteTextFile(a.out, CurvesToCsv(points));
  WriteSidecar(a.out, "curves", args);
  out << fmt::format("wrote {} curve points to {}\n", points.size(), a.out);
  return kExitOk;
}

struct StatsArgs {
  std::string gt;
  std::string out;
  std::string format = "json";
};

int RunStats(const StatsArgs& a, const std::vector<std::string>& args,
             std::ostream& out, std::ostream& err) {
  const GroundTruth gt = LoadGtOrFail(a.gt, err);
  const DatasetStats stats = ComputeDatasetStats(gt);
  WriteTextFile(a.out,
                a.format == "csv" ? StatsToCsv(stats) : StatsToJson(stats));
  WriteSidecar(a.out, "stats", args);
  out << fmt::format("{} sequences, {} images, {} annotations\n",
                     stats.total_sequences, stats.total_images,
                     stats.total_annotations);
  return kExitOk;
}

struct MasksArgs {
  std::string gt;
  std::vector<std::string> from_masks;
  std::string out_dir;
  std::string out;
  std::string mode = "hard";
  std::string mask_format = "png";
  double sigma_ratio = 0.25;
  double threshold = 0.5;
  int connectivity = 8;
  std::optional<std::int64_t> image_id;
  std::optional<std::int64_t> class_id;
};

int RunMasks(const MasksArgs& a, const std::vector<std::string>& args,
             std::ostream& out, std::ostream& err) {
  const bool rasterize = !a.gt.empty();
  const bool recover = !a.from_masks.empty();
  if (rasterize == recover) {
    throw UsageError("masks needs exactly one of --gt or --from-masks");
  }
  if (rasterize) {
    if (a.out_dir.empty()) throw UsageError("--gt requires --out-dir");
    const GroundTruth gt = LoadGtOrFail(a.gt, err);
    const MaskMode mode = a.mode == "soft" ? MaskMode::kSoft : MaskMode::kHard;
    const SoftMaskOptions options{a.sigma_ratio};
    std::error_code ec;
    fs::create_directories(a.out_dir, ec);
    if (ec) {
      throw FileError(fmt::format("cannot create '{}': {}", a.out_dir,
                                  ec.message()));
    }
    std::size_t written = 0;
    for (const auto& img : gt.images) {
      if (a.image_id && img.id != *a.image_id) continue;
      if (img.width <= 0 || img.height <= 0) {
        throw UsageError(fmt::format(
            "image {} has no size; masks need image width and height",
            img.id));
      }
      for (std::int64_t cls : gt.ClassIds()) {
        if (a.class_id && cls != *a.class_id) continue;
        const Mask mask = RasterizeImage(gt, img.id, cls, mode, options);
        const std::string stem = fmt::format("{}_{}", img.id, cls);
        if (a.mask_format == "float") {
          WriteMaskFloat((fs::path(a.out_dir) / (stem + ".sfm")).string(),
                         mask);
        } else {
          WriteMaskPng((fs::path(a.out_dir) / (stem + ".png")).string(), mask);
        }
        ++written;
      }
    }
    out << fmt::format("wrote {} masks to {}\n", written, a.out_dir);
    return kExitOk;
  }

  if (a.out.empty()) throw UsageError("--from-masks requires --out");
  const std::regex name_re(R"(^(-?\d+)_(-?\d+)$)");
  Predictions preds;
  const Connectivity conn =
      a.connectivity == 4 ? Connectivity::kFour : Connectivity::kEight;
  for (const auto& path : a.from_masks) {
    const std::string stem = fs::path(path).stem().string();
    std::smatch m;
    std::optional<std::int64_t> image_id = a.image_id;
    std::optional<std::int64_t> class_id = a.class_id;
    if (std::regex_match(stem, m, name_re)) {
      if (!image_id) image_id = std::stoll(m[1].str());
      if (!class_id) class_id = std::stoll(m[2].str());
    }
    if (!image_id) {
      throw UsageError(fmt::format(
          "cannot infer image id for '{}'; name it <image>_<class> or pass "
          "--image-id",
          path));
    }
    Mask mask = ReadMask(path, class_id.value_or(0));
    if (class_id && fs::path(path).extension() == ".sfm" &&
        mask.class_id() != *class_id && a.class_id) {
      throw UsageError(fmt::format("'{}' stores class {}, --class-id says {}",
                                   path, mask.class_id(), *class_id));
    }
    for (Detection d : MaskToBBoxes(mask, a.threshold, conn)) {
      d.image_id = *image_id;
      d.frame_id = *image_id;
      preds.detections.push_back(d);
    }
  }
  WriteTextFile(a.out, SerializePredictions(preds));
  WriteSidecar(a.out, "masks", args);
  out << fmt::format("recovered {} boxes from {} masks\n",
                     preds.detections.size(), a.from_masks.size());
  return kExitOk;
}

struct InterpolateArgs {
  std::string gt;
  std::string out;
  std::int64_t max_gap = kMaxInterpolatedGap;
};

int RunInterpolate(const InterpolateArgs& a,
                   const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
  GroundTruth gt = LoadGtOrFail(a.gt, err);
  const InterpolationSummary summary = InterpolateDataset(gt, a.max_gap);
  WriteTextFile(a.out, SerializeGroundTruth(gt));
  WriteSidecar(a.out, "interpolate", args);
  out << fmt::format("filled {} boxes, {} gap(s) left open\n", summary.filled,
                     summary.open_gaps.size());
  for (const auto& g : summary.open_gaps) {
    out << fmt::format("open gap: track {} frames {}..{} ({} missing)\n",
                       g.track_id ? std::to_string(*g.track_id) : "-",
                       g.after_frame, g.before_frame, g.missing());
  }
  return kExitOk;
}

struct ConvertArgs {
  std::string in;
  std::string out;
};

int RunConvert(const ConvertArgs& a, const std::vector<std::string>& args,
               std::ostream& out, std::ostream& err) {
  const GroundTruth gt = LoadGtOrFail(a.in, err);
  WriteTextFile(a.out, SerializeGroundTruth(gt));
  WriteSidecar(a.out, "convert", args);
  out << fmt::format("converted {} images, {} annotations\n", gt.images.size(),
                     gt.annotations.size());
  return kExitOk;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Detection evaluation with IoU, NWD and scale-adaptive "
               "SAFit measures",
               "safit-eval"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough(false);

  EvaluateArgs ev;
  ev.workers = DefaultWorkers();
  auto* evaluate = app.add_subcommand(
      "evaluate", "COCO-style AP/AR of predictions against ground truth");
  evaluate->add_option("--gt", ev.gt, "Ground-truth JSON")
      ->required()
      ->check(CLI::ExistingFile);
  evaluate->add_option("--pred", ev.pred, "Predictions JSON")
      ->required()
      ->check(CLI::ExistingFile);
  evaluate->add_option("--out", ev.out, "Report output path")->required();
  evaluate->add_option("--format", ev.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  ev.measure.Add(evaluate, "safit");
  evaluate
      ->add_option("--thresholds", ev.thresholds,
                   "Comma-separated affinity thresholds in (0,1], strictly "
                   "increasing")
      ->delimiter(',')
      ->capture_default_str();
  evaluate->add_option("--max-dets", ev.max_dets,
                       "Detections kept per image and class")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  evaluate->add_option("--recall-points", ev.recall_points,
                       "Recall sample points for interpolated AP")
      ->check(CLI::Range(2, 100001))
      ->capture_default_str();
  evaluate->add_option("--modality", ev.modality,
                       "Restrict to one modality: visible, thermal or all")
      ->default_str("all");
  evaluate->add_option("--light-vision", ev.light_vision,
                       "Restrict to sequences with this light vision: high, "
                       "medium, low, invisible");
  evaluate->add_option("--classes", ev.classes,
                       "Comma-separated class ids (default: all GT classes)")
      ->delimiter(',');
  evaluate->add_flag("--ignore-interpolated", ev.ignore_interpolated,
                     "Treat interpolated GT boxes as ignored");
  evaluate->add_option("--workers", ev.workers,
                       fmt::format("Worker threads (default from {} or 1)",
                                   kWorkersEnv))
      ->check(CLI::Range(1, 1024))
      ->capture_default_str();

  CurvesArgs cv;
  auto* curves = app.add_subcommand(
      "curves", "Measure value vs. diagonal pixel deviation, as CSV");
  curves->add_option("--sizes", cv.sizes, "Comma-separated box sizes (px)")
      ->delimiter(',')
      ->capture_default_str();
  curves->add_option("--max-dev", cv.max_dev, "Largest deviation (px)")
      ->capture_default_str();
  curves->add_option("--measure", cv.measures,
                     "Comma-separated measures: iou, giou, diou, ciou, nwd, "
                     "safit, safit_s, safit_g")
      ->delimiter(',')
      ->capture_default_str();
  curves->add_option("--c", cv.c, "SAFit size-aware constant C (px)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  curves->add_option("--k", cv.k, "NWD constant K (px); defaults to C")
      ->check(CLI::PositiveNumber);
  curves->add_option("--out", cv.out, "CSV output path")->required();

  StatsArgs st;
  auto* stats = app.add_subcommand(
      "stats", "Density, scale and light-vision statistics of a dataset");
  stats->add_option("--gt", st.gt, "Ground-truth JSON")
      ->required()
      ->check(CLI::ExistingFile);
  stats->add_option("--out", st.out, "Output path")->required();
  stats->add_option("--format", st.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  MasksArgs mk;
  auto* masks = app.add_subcommand(
      "masks", "Rasterize GT boxes to masks, or recover boxes from masks");
  masks->add_option("--gt", mk.gt, "Ground-truth JSON to rasterize")
      ->check(CLI::ExistingFile);
  masks->add_option("--from-masks", mk.from_masks,
                    "Mask files (.png or .sfm) to convert back to boxes")
      ->check(CLI::ExistingFile);
  masks->add_option("--out-dir", mk.out_dir,
                    "Directory for <image>_<class> mask files");
  masks->add_option("--out", mk.out, "Predictions JSON for recovered boxes");
  masks->add_option("--mode", mk.mode, "Mask type")
      ->check(CLI::IsMember({"hard", "soft"}))
      ->capture_default_str();
  masks->add_option("--mask-format", mk.mask_format,
                    "png (8-bit, value*255) or float (.sfm container)")
      ->check(CLI::IsMember({"png", "float"}))
      ->capture_default_str();
  masks->add_option("--sigma-ratio", mk.sigma_ratio,
                    "Soft-mask sigma as a fraction of box width/height")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  masks->add_option("--threshold", mk.threshold, "Binarization threshold")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  masks->add_option("--connectivity", mk.connectivity, "4 or 8")
      ->check(CLI::IsMember({4, 8}))
      ->capture_default_str();
  masks->add_option("--image-id", mk.image_id,
                    "Only this image (rasterize) / image id for recovered "
                    "boxes");
  masks->add_option("--class-id", mk.class_id,
                    "Only this class (rasterize) / class id for recovered "
                    "boxes");

  InterpolateArgs ip;
  auto* interpolate = app.add_subcommand(
      "interpolate", "Fill short occlusion gaps in tracks");
  interpolate->add_option("--gt", ip.gt, "Ground-truth JSON")
      ->required()
      ->check(CLI::ExistingFile);
  interpolate->add_option("--out", ip.out, "Output ground-truth JSON")
      ->required();
  interpolate->add_option("--max-gap", ip.max_gap,
                          "Longest run of missing frames to fill")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  ConvertArgs cvt;
  auto* convert = app.add_subcommand(
      "convert", "Rewrite a plain COCO file in the extended schema");
  convert->add_option("--in", cvt.in, "COCO or extended JSON")
      ->required()
      ->check(CLI::ExistingFile);
  convert->add_option("--out", cvt.out, "Output path")->required();

  std::vector<std::string> rest(args.begin() + (args.empty() ? 0 : 1),
                                args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    // Subcommand --help surfaces here too.
    if (e.get_exit_code() == 0) {
      for (auto* sub : app.get_subcommands()) out << sub->help();
      if (app.get_subcommands().empty()) out << app.help();
      return kExitOk;
    }
    ReportError(err, "usage", e.what());
    return kExitUsage;
  }

  try {
    if (evaluate->parsed()) return RunEvaluate(ev, args, out, err);
    if (curves->parsed()) return RunCurves(cv, args, out);
    if (stats->parsed()) return RunStats(st, args, out, err);
    if (masks->parsed()) return RunMasks(mk, args, out, err);
    if (interpolate->parsed()) return RunInterpolate(ip, args, out, err);
    if (convert->parsed()) return RunConvert(cvt, args, out, err);
  } catch (const UsageError& e) {
    ReportError(err, "usage", e.what());
    return kExitUsage;
  } catch (const ConfigError& e) {
    ReportError(err, "usage", e.what());
    return kExitUsage;
  } catch (const ValidationFailed& e) {
    ReportError(err, "schema", e.what());
    return kExitValidation;
  } catch (const FileError& e) {
    ReportError(err, "file", e.what());
    return kExitValidation;
  } catch (const DataError& e) {
    ReportError(err, "data", e.what());
    return kExitValidation;
  } catch (const std::exception& e) {
    ReportError(err, "internal", e.what());
    return kExitValidation;
  }
  ReportError(err, "usage", "no subcommand given");
  return kExitUsage;
}

}  // namespace safit::cli
