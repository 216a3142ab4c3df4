// SPDX-License-Identifier: Apache-2.0
//
// Copyright (C) 2026 The fdmimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef FDMIMO_SELFTEST_HPP
#define FDMIMO_SELFTEST_HPP

#include <ostream>

namespace fdmimo {

/// Runs the quick closed-form checks of every module, one line per check.
/// Returns the number of failures.
int run_selftest(std::ostream& out);

} // namespace fdmimo

#endif
