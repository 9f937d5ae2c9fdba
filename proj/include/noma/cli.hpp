// SPDX-License-Identifier: Apache-2.0
//
// noma-limfb: link-level simulator for limited-feedback MISO-NOMA downlink
// Copyright (C) 2026 The noma-limfb authors
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

#ifndef NOMA_CLI_HPP
#define NOMA_CLI_HPP

#include "noma/harness.hpp"

#include <iosfwd>
#include <set>
#include <string>
#include <vector>

namespace noma::cli
{

inline constexpr int exit_ok = 0;
inline constexpr int exit_config = 2;
inline constexpr int exit_violations = 3;

inline constexpr const char *seed_env_var = "NOMA_LIMFB_SEED";

// Effective configuration of one invocation. The grids hold every value of a range setting; the
// scalar fields of cfg take the first entry.
struct Settings
{
    ExperimentConfig cfg;
    std::vector<std::size_t> nt_grid{2};
    std::vector<int> b_grid{3};
    std::vector<int> bp_grid{3};
    std::set<std::string> keys_set; // keys given by the config file or flags

    bool same_config(const Settings &o) const
    {
        return cfg == o.cfg && nt_grid == o.nt_grid && b_grid == o.b_grid && bp_grid == o.bp_grid;
    }
};

// "a..b" (inclusive), "a,b,c" or "a". Throws ConfigError.
std::vector<int> parse_int_list(const std::string &text);
std::string format_int_list(const std::vector<int> &values);

// Applies one key = value setting. Unknown keys and malformed values throw ConfigError.
void apply_setting(Settings &s, const std::string &key, const std::string &value);

// Flat "key = value" text, '#' starts a comment.
void apply_config_text(Settings &s, const std::string &text, const std::string &origin = "config");
void apply_config_file(Settings &s, const std::string &path);

// Every key, in a form apply_config_text reads back to the same configuration.
std::string dump_config(const Settings &s);

// Full command line: argv[0] is the program name. Output goes to out, diagnostics to err.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace noma::cli

#endif
