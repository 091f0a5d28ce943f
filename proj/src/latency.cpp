// Copyright 2026 The DOGMa Fusion Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dogma/latency.hpp"

#include "dogma/error.hpp"

#include <numeric>
#include <string>

namespace dogma
{

LatencyTracker::LatencyTracker(std::size_t capacity) : capacity_(capacity)
{
  if (capacity_ == 0) {
    throw Error(ErrorCode::ConfigError, "latency window must hold at least one sample");
  }
}

double LatencyTracker::observe(double creation_ts, double arrival_ts)
{
  if (arrival_ts < creation_ts) {
    throw Error(
      ErrorCode::NegativeLatency,
      "arrival " + std::to_string(arrival_ts) + " before creation " + std::to_string(creation_ts));
  }
  samples_.push_back(arrival_ts - creation_ts);
  while (samples_.size() > capacity_) {
    samples_.pop_front();
  }
  estimate_ = std::accumulate(samples_.begin(), samples_.end(), 0.0) /
              static_cast<double>(samples_.size());
  return estimate_;
}

}  // namespace dogma
