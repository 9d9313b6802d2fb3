// Copyright 2026 The Chronoscope Authors.
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

#ifndef CHRONOSCOPE_CLI_HPP_
#define CHRONOSCOPE_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace chronoscope {

// Exit codes of the command line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

// Runs one command line invocation. `args` excludes the program name.
// Subcommands: ingest, synth, index, trend, cooccur, group-trend, sentiment,
// entity-trend, external, top, map-data, meta, serve. Query subcommands print the
// same JSON document the HTTP service returns for the matching endpoint, or
// its CSV rendering with --format csv.
int CliDispatch(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace chronoscope

#endif  // CHRONOSCOPE_CLI_HPP_
