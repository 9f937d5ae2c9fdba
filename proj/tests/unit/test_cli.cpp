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

#include "noma/cli.hpp"

#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace noma;
using namespace noma::cli;

namespace
{

struct Run
{
    int code;
    std::string out;
    std::string err;
};

Run invoke(std::vector<std::string> args)
{
    args.insert(args.begin(), "noma-limfb");
    std::vector<const char *> argv;
    for (const auto &a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path &p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::filesystem::path scratch(const std::string &name)
{
    const auto dir = std::filesystem::temp_directory_path() / "noma_limfb_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

} // namespace

TEST_CASE("integer lists and ranges")
{
    CHECK(parse_int_list("1..6") == std::vector<int>{1, 2, 3, 4, 5, 6});
    CHECK(parse_int_list("3") == std::vector<int>{3});
    CHECK(parse_int_list("1,3, 6") == std::vector<int>{1, 3, 6});
    CHECK(parse_int_list(" 4..4 ") == std::vector<int>{4});
    CHECK_THROWS_AS(parse_int_list("6..1"), ConfigError);
    CHECK_THROWS_AS(parse_int_list("a..3"), ConfigError);
    CHECK_THROWS_AS(parse_int_list("1,,2"), ConfigError);
    CHECK_THROWS_AS(parse_int_list(""), ConfigError);

    CHECK(format_int_list({1, 2, 3, 4}) == "1..4");
    CHECK(format_int_list({1, 3, 6}) == "1,3,6");
    CHECK(format_int_list({2}) == "2");
    for (const auto &v : {std::vector<int>{1, 2, 3}, std::vector<int>{5, 7}, std::vector<int>{1, 2}})
        CHECK(parse_int_list(format_int_list(v)) == v);
}

TEST_CASE("config text sets keys and rejects unknown ones")
{
    Settings s;
    apply_config_text(s, "# comment\nn_t = 4\nb = 1..3  # trailing\nsnr_db = 12.5\ndelta_source = explicit:0.25\n");
    CHECK(s.cfg.n_t == 4);
    CHECK(s.b_grid == std::vector<int>{1, 2, 3});
    CHECK(s.cfg.snr_db == 12.5);
    CHECK(s.cfg.delta_source == DeltaSource::explicit_value);
    CHECK(s.cfg.explicit_delta == 0.25);
    CHECK(s.keys_set.count("snr_db") == 1);

    Settings t;
    CHECK_THROWS_AS(apply_config_text(t, "bogus = 1\n"), ConfigError);
    CHECK_THROWS_AS(apply_config_text(t, "n_t 4\n"), ConfigError);
    CHECK_THROWS_AS(apply_config_text(t, "seed = -1\n"), ConfigError);
    CHECK_THROWS_AS(apply_config_text(t, "snr_db = ten\n"), ConfigError);
    CHECK_THROWS_AS(apply_config_text(t, "independent_user_codebooks = maybe\n"), ConfigError);
    CHECK_THROWS_AS(apply_config_text(t, "codebook_mode = shared\n"), ConfigError);
}

TEST_CASE("dumped config reproduces the settings")
{
    Settings s;
    apply_setting(s, "n_t", "2,4");
    apply_setting(s, "b", "1..6");
    apply_setting(s, "b_prime", "2,5");
    apply_setting(s, "snr_db", "7.123456789012345");
    apply_setting(s, "r_th", "0.3");
    apply_setting(s, "n_samples", "12345");
    apply_setting(s, "seed", "99");
    apply_setting(s, "delta_source", "table1");
    apply_setting(s, "explicit_delta", "0.1");
    apply_setting(s, "codebook_mode", "fixed");
    apply_setting(s, "feasibility_mode", "conservative");
    apply_setting(s, "independent_user_codebooks", "true");
    apply_setting(s, "condition_on_unsaturated", "true");
    apply_setting(s, "train_samples", "777");

    Settings back;
    apply_config_text(back, dump_config(s));
    CHECK(back.same_config(s));
    CHECK(back.cfg == s.cfg);
    CHECK(dump_config(back) == dump_config(s));
}

TEST_CASE("dump-config through the command line round-trips")
{
    const auto path = scratch("dump.cfg");
    const Run r = invoke({"sweep", "--b", "1..3", "--bprime", "2", "--snr-db", "15", "--seed", "11", "--dump-config",
                          path.string()});
    REQUIRE(r.code == exit_ok);
    const Run r2 = invoke({"sweep", "--config", path.string(), "--dump-config", "-"});
    REQUIRE(r2.code == exit_ok);
    CHECK(r2.out == slurp(path));
    CHECK(r2.out.find("b = 1..3") != std::string::npos);
    CHECK(r2.out.find("seed = 11") != std::string::npos);
}

TEST_CASE("flags override the config file")
{
    const auto path = scratch("override.cfg");
    std::ofstream(path) << "seed = 5\nsnr_db = 3\n";
    const Run r = invoke({"sweep", "--config", path.string(), "--seed", "6", "--dump-config", "-"});
    REQUIRE(r.code == exit_ok);
    CHECK(r.out.find("seed = 6") != std::string::npos);
    CHECK(r.out.find("snr_db = 3") != std::string::npos);
}

TEST_CASE("usage and configuration errors exit with code 2")
{
    CHECK(invoke({}).code == exit_config);
    CHECK(invoke({"frobnicate"}).code == exit_config);
    CHECK(invoke({"sweep", "--nosuchflag"}).code == exit_config);
    CHECK(invoke({"sweep", "--samples", "10"}).code == exit_config); // no --out

    const auto path = scratch("bad.cfg");
    std::ofstream(path) << "n_t = 2\nwarp_factor = 9\n";
    const Run r = invoke({"sweep", "--config", path.string(), "--out", scratch("x.csv").string()});
    CHECK(r.code == exit_config);
    CHECK(r.err.find("warp_factor") != std::string::npos);

    CHECK(invoke({"sweep", "--delta-source", "table1", "--b", "7", "--out", scratch("y.csv").string()}).code ==
          exit_config);
    CHECK(invoke({"sweep", "--nt", "2,4", "--out", scratch("z.csv").string()}).code == exit_config);
    CHECK(invoke({"single", "--delta-source", "explicit"}).code == exit_config);
    CHECK(invoke({"sweep", "--config", scratch("missing.cfg").string()}).code == exit_config);
}

TEST_CASE("seed falls back to the environment")
{
    ::setenv(seed_env_var, "4242", 1);
    const Run env_only = invoke({"sweep", "--dump-config", "-"});
    const Run flag = invoke({"sweep", "--seed", "3", "--dump-config", "-"});
    ::unsetenv(seed_env_var);
    const Run none = invoke({"sweep", "--dump-config", "-"});
    CHECK(env_only.out.find("seed = 4242") != std::string::npos);
    CHECK(flag.out.find("seed = 3") != std::string::npos);
    CHECK(none.out.find("seed = 7") != std::string::npos);

    ::setenv(seed_env_var, "notanumber", 1);
    CHECK(invoke({"sweep", "--dump-config", "-"}).code == exit_config);
    ::unsetenv(seed_env_var);
}

TEST_CASE("sweep output is deterministic and independent of worker count")
{
    const auto a = scratch("a.csv"), b = scratch("b.csv");
    const std::vector<std::string> common{"sweep", "--b", "1..2", "--bprime", "1,3", "--samples", "3000",
                                          "--delta-source", "table1"};
    auto args_a = common;
    args_a.insert(args_a.end(), {"--workers", "1", "--out", a.string()});
    auto args_b = common;
    args_b.insert(args_b.end(), {"--workers", "3", "--out", b.string()});
    REQUIRE(invoke(args_a).code == exit_ok);
    REQUIRE(invoke(args_b).code == exit_ok);
    const std::string ca = slurp(a);
    CHECK(ca == slurp(b));
    CHECK(std::count(ca.begin(), ca.end(), '\n') == 5);
}

TEST_CASE("sweep writes plot series")
{
    const auto dir = scratch("plots");
    std::filesystem::remove_all(dir);
    const Run r = invoke({"sweep", "--b", "1..2", "--bprime", "2", "--samples", "500", "--delta-source", "table1",
                          "--out", scratch("p.csv").string(), "--plot-dir", dir.string()});
    REQUIRE(r.code == exit_ok);
    CHECK(std::filesystem::exists(dir / "rate_loss_bprime2.dat"));
    CHECK(std::filesystem::exists(dir / "sum_rate_lf_bprime2.dat"));
    CHECK(std::filesystem::exists(dir / "sum_rate_full.dat"));
}

TEST_CASE("single prints one sample as JSON")
{
    const Run r = invoke({"single", "--delta-source", "table1", "--index", "3"});
    REQUIRE(r.code == exit_ok);
    CHECK(r.out.find("\"index\": 3") != std::string::npos);
    CHECK(r.out.find("\"feedback\"") != std::string::npos);
    CHECK(r.out.find("\"bounds\"") != std::string::npos);
}

TEST_CASE("bounds-check reports zero violations on a small grid")
{
    const Run r = invoke({"bounds-check", "--nt", "2", "--b", "3", "--bprime", "3", "--samples", "2000",
                          "--delta-source", "table1"});
    CHECK(r.code == exit_ok);
    CHECK(r.out.find(" 0 violations") != std::string::npos);
}

TEST_CASE("train-delta writes a cache file that a sweep can read back")
{
    const auto cache = scratch("deltas.csv");
    std::filesystem::remove(cache);
    const Run r = invoke({"train-delta", "--b", "1,3", "--bprime", "1", "--samples", "5000", "--out",
                          cache.string()});
    REQUIRE(r.code == exit_ok);
    const std::string text = slurp(cache);
    CHECK(text.rfind("B,Bprime,Nt,seed,delta", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 3);

    DeltaCache dc(cache.string());
    CHECK(dc.entries().size() == 2);
    CHECK(dc.find(1, 1, 2, 7).has_value());
}
