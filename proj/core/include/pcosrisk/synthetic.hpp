// Copyright 2026 The pcosrisk Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PCOSRISK_SYNTHETIC_HPP_
#define PCOSRISK_SYNTHETIC_HPP_

#include <cstddef>
#include <cstdint>
#include <string>

namespace pcosrisk {

// Generates a CSV laid out like the public Kerala PCOS table (same column
// names, spacing quirks and codings, plus a trailing unnamed column) with
// simulated values. Class-conditional distributions put most of the signal
// on follicle counts, cycle irregularity, weight gain and the androgen
// signs. A few cells are left empty or non-numeric so cleaning has work to
// do. For demos and tests only; the values carry no clinical meaning.
std::string SyntheticKeralaCsv(std::size_t rows, std::uint64_t seed);

}  // namespace pcosrisk

#endif  // PCOSRISK_SYNTHETIC_HPP_
