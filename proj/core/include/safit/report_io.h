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

#ifndef SAFIT_REPORT_IO_H_
#define SAFIT_REPORT_IO_H_

#include <string>

#include "safit/evaluator.h"

namespace safit {

// Full nested report. Absent cells are written as null. Output is a pure
// function of the report (no timestamps), so identical runs give identical
// bytes.
std::string ReportToJson(const EvalReport& report);

// Flat rows: measure,class,bin,threshold,metric,value. Summary rows use
// class "all" and threshold "mean" (or the threshold value for ap50/ap75).
std::string ReportToCsv(const EvalReport& report);

}  // namespace safit

#endif  // SAFIT_REPORT_IO_H_
