// Copyright 2026 The segmap authors
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

#ifndef SEGMAP_CLI_HPP
#define SEGMAP_CLI_HPP

#include <string>
#include <vector>

namespace segmap {

/// Runs the command-line tool. `args` excludes the program name.
/// Exit codes: 0 success / certificate satisfied; 1 violated certificate or
/// failed verification (a finding; the JSON report is still written);
/// 2 usage or input errors.
int run_cli(const std::vector<std::string> &args);

}  // namespace segmap

#endif
