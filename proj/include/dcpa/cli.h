// Copyright 2026 The Authors.
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

#ifndef DCPA_CLI_H_
#define DCPA_CLI_H_

#include <iosfwd>

namespace dcpa {

// Subcommands: run, sweep, oracle-check, channel-table. Returns the
// process exit code; diagnostics go to `err`.
int CliMain(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace dcpa

#endif  // DCPA_CLI_H_
