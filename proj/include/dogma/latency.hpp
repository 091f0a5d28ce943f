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

#ifndef DOGMA__LATENCY_HPP_
#define DOGMA__LATENCY_HPP_

#include <cstddef>
#include <deque>

namespace dogma
{

/// Sliding-window mean of transmission latency (arrival minus creation time).
class LatencyTracker
{
public:
  explicit LatencyTracker(std::size_t capacity = 20);

  /// Appends a sample, evicting the oldest beyond capacity. Throws NegativeLatency.
  double observe(double creation_ts, double arrival_ts);

  double estimate() const noexcept { return estimate_; }
  std::size_t size() const noexcept { return samples_.size(); }
  std::size_t capacity() const noexcept { return capacity_; }

private:
  std::size_t capacity_;
  std::deque<double> samples_;
  double estimate_{0.0};
};

}  // namespace dogma

#endif  // DOGMA__LATENCY_HPP_
