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

#include "safit/report_io.h"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace safit {
namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json Opt(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json SummaryJson(const MetricSummary& s) {
  ordered_json j;
  j["ap"] = Opt(s.ap);
  j["ap50"] = Opt(s.ap50);
  j["ap75"] = Opt(s.ap75);
  j["ar"] = Opt(s.ar);
  ordered_json ap_scale;
  ordered_json ar_scale;
  for (std::size_t b = 0; b < kAllScaleLevels.size(); ++b) {
    const std::string name(ScaleLevelName(kAllScaleLevels[b]));
    ap_scale[name] = Opt(s.ap_scale[b]);
    ar_scale[name] = Opt(s.ar_scale[b]);
  }
  j["ap_scale"] = std::move(ap_scale);
  j["ar_scale"] = std::move(ar_scale);
  return j;
}

std::string CsvValue(const std::optional<double>& v) {
  return v ? fmt::format("{}", *v) : std::string();
}

}  // namespace

std::string ReportToJson(const EvalReport& report) {
  ordered_json root;
  root["schema_version"] = 1;
  root["defined"] = report.defined;
  root["measure"] = MeasureName(report.measure);
  ordered_json params;
  params["c"] = report.params.c;
  params["k"] = Opt(report.params.k);
  root["params"] = std::move(params);
  root["thresholds"] = report.thresholds;
  root["max_detections"] = report.max_detections;
  root["classes"] = report.classes;
  root["summary"] = SummaryJson(report.overall);

  ordered_json per_class = ordered_json::object();
  for (const auto& [cls, s] : report.per_class) {
    per_class[std::to_string(cls)] = SummaryJson(s);
  }
  root["per_class"] = std::move(per_class);

  ordered_json per_light = ordered_json::object();
  for (const auto& [lv, s] : report.per_light_vision) {
    per_light[std::string(LightVisionName(lv))] = SummaryJson(s);
  }
  root["per_light_vision"] = std::move(per_light);

  ordered_json cells = ordered_json::array();
  for (const auto& c : report.cells) {
    ordered_json j;
    j["class"] = c.class_id;
    j["bin"] = AreaBinName(c.bin);
    j["threshold"] = report.thresholds[c.threshold_index];
    j["num_gt"] = c.num_gt;
    j["ap"] = Opt(c.ap);
    j["recall"] = Opt(c.recall);
    cells.push_back(std::move(j));
  }
  root["cells"] = std::move(cells);
  return root.dump(2) + "\n";
}

std::string ReportToCsv(const EvalReport& report) {
  const std::string_view measure = MeasureName(report.measure);
  std::string out = "measure,class,bin,threshold,metric,value\n";
  auto row = [&](std::string_view cls, std::string_view bin,
                 std::string_view thr, std::string_view metric,
                 const std::optional<double>& v) {
    out += fmt::format("{},{},{},{},{},{}\n", measure, cls, bin, thr, metric,
                       CsvValue(v));
  };
  auto summary_rows = [&](std::string_view cls, const MetricSummary& s) {
    row(cls, "all", "mean", "ap", s.ap);
    row(cls, "all", "0.5", "ap", s.ap50);
    row(cls, "all", "0.75", "ap", s.ap75);
    row(cls, "all", "mean", "ar", s.ar);
    for (std::size_t b = 0; b < kAllScaleLevels.size(); ++b) {
      row(cls, ScaleLevelName(kAllScaleLevels[b]), "mean", "ap",
          s.ap_scale[b]);
      row(cls, ScaleLevelName(kAllScaleLevels[b]), "mean", "ar",
          s.ar_scale[b]);
    }
  };
  summary_rows("all", report.overall);
  for (const auto& [cls, s] : report.per_class) {
    summary_rows(std::to_string(cls), s);
  }
  for (const auto& [lv, s] : report.per_light_vision) {
    summary_rows(fmt::format("light:{}", LightVisionName(lv)), s);
  }
  for (const auto& c : report.cells) {
    const std::string cls = std::to_string(c.class_id);
    const std::string thr = fmt::format("{}", report.thresholds[c.threshold_index]);
    row(cls, AreaBinName(c.bin), thr, "ap", c.ap);
    row(cls, AreaBinName(c.bin), thr, "recall", c.recall);
  }
  return out;
}

}  // namespace safit
