// Copyright 2026 The lopc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <nlohmann/json.hpp>
#include "lopc/bench.hpp"
#include "lopc/integrity.hpp"
#include "lopc/metrics.hpp"

namespace lopc {

// JSON views of report types. Non-finite reals become null with a companion
// flag, since JSON has no infinity.

nlohmann::json to_json(const SummaryStats& s);
nlohmann::json to_json(const PromptMetrics& m);
nlohmann::json to_json(const VerificationReport& v);
nlohmann::json to_json(const EntropyReport& e);
nlohmann::json to_json(const BenchmarkReport& r);

}  // namespace lopc
