// Copyright 2026 The qqbf Authors
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

#ifndef QQBF_TOOLS_CLI_HPP
#define QQBF_TOOLS_CLI_HPP

#include <array>
#include <ostream>
#include <string>
#include <vector>

namespace qqbf::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 2,
    kIndefinite = 3,
    kCheckMismatch = 4,
};

/// Runs one command. args excludes the program name.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// Input triplets and printed probabilities (SP, MP, SA, MA) of the
/// sum-product concatenation table.
struct TableRow {
    std::array<const char *, 3> inputs;
    std::array<double, 4> printed;
};
const std::vector<TableRow> &table_s1_rows();

}  // namespace qqbf::cli

#endif  // QQBF_TOOLS_CLI_HPP
