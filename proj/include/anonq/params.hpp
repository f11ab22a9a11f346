// Copyright 2026 The anonq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ANONQ_PARAMS_HPP
#define ANONQ_PARAMS_HPP

#include <utility>

namespace anonq {

// The six anonymization constants. Construction rejects (never clamps)
// anything below the enforced minimums.
struct AnonParams {
  int low_thresh = 2;            // hard floor of the noisy suppression threshold
  double supp_sd = 1.0;          // sd of the suppression threshold noise
  double low_mean_gap = 2.0;     // threshold mean = low_thresh + low_mean_gap
  double base_sd = 1.5;          // base sd of the count noise (two layers)
  std::pair<int, int> outlier_range{1, 2};
  std::pair<int, int> top_range{2, 3};

  // Throws Error(kInvalidParams) when any value is below its minimum:
  // low_thresh>=2, supp_sd>=1.0, low_mean_gap>=2, base_sd>=1.5,
  // outlier_range>=[1,2], top_range>=[2,3], and max>min for both ranges.
  void validate() const;

  static AnonParams validated(AnonParams p) {
    p.validate();
    return p;
  }

  // The three privacy settings exercised in the evaluation bench.
  static AnonParams private_default();        // P:   gap 2, supp_sd 1, base_sd 1.5
  static AnonParams extra_private();          // XP:  gap 3, supp_sd 1.5, base_sd 2.25
  static AnonParams extra_extra_private();    // XXP: gap 4, supp_sd 2, base_sd 3.0
};

}  // namespace anonq

#endif  // ANONQ_PARAMS_HPP
