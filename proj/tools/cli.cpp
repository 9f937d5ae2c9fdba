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

#include "noma/statistics.hpp"
#include "noma/sweep.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace noma::cli
{

namespace
{

std::string trim(const std::string &s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

long long parse_integer(const std::string &key, const std::string &text)
{
    const std::string t = trim(text);
    std::size_t used = 0;
    long long v = 0;
    try
    {
        v = std::stoll(t, &used);
    }
    catch (const std::logic_error &)
    {
        used = 0;
    }
    if (t.empty() || used != t.size())
        throw ConfigError(key + ": expected an integer, got '" + text + "'");
    return v;
}

std::uint64_t parse_u64(const std::string &key, const std::string &text)
{
    const std::string t = trim(text);
    std::size_t used = 0;
    std::uint64_t v = 0;
    try
    {
        if (!t.empty() && t[0] != '-')
            v = std::stoull(t, &used);
    }
    catch (const std::logic_error &)
    {
        used = 0;
    }
    if (t.empty() || used != t.size())
        throw ConfigError(key + ": expected a nonnegative integer, got '" + text + "'");
    return v;
}

double parse_real(const std::string &key, const std::string &text)
{
    const std::string t = trim(text);
    std::size_t used = 0;
    double v = 0.0;
    try
    {
        v = std::stod(t, &used);
    }
    catch (const std::logic_error &)
    {
        used = 0;
    }
    if (t.empty() || used != t.size() || !std::isfinite(v))
        throw ConfigError(key + ": expected a finite number, got '" + text + "'");
    return v;
}

bool parse_bool(const std::string &key, const std::string &text)
{
    const std::string t = trim(text);
    if (t == "true" || t == "1" || t == "yes" || t == "on")
        return true;
    if (t == "false" || t == "0" || t == "no" || t == "off")
        return false;
    throw ConfigError(key + ": expected true or false, got '" + text + "'");
}

std::string format_real(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<int> bit_grid(const std::string &key, const std::string &value)
{
    try
    {
        return parse_int_list(value);
    }
    catch (const ConfigError &e)
    {
        throw ConfigError(key + ": " + e.what());
    }
}

} // namespace

std::vector<int> parse_int_list(const std::string &text)
{
    const std::string t = trim(text);
    std::vector<int> out;
    const auto dots = t.find("..");
    if (dots != std::string::npos)
    {
        const long long lo = parse_integer("range", t.substr(0, dots));
        const long long hi = parse_integer("range", t.substr(dots + 2));
        if (hi < lo)
            throw ConfigError("range '" + t + "' is empty");
        if (hi - lo > 1000000)
            throw ConfigError("range '" + t + "' is too long");
        for (long long v = lo; v <= hi; ++v)
            out.push_back(static_cast<int>(v));
        return out;
    }
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(static_cast<int>(parse_integer("list", item)));
    if (out.empty())
        throw ConfigError("empty list");
    return out;
}

std::string format_int_list(const std::vector<int> &values)
{
    if (values.empty())
        return {};
    bool contiguous = values.size() > 2;
    for (std::size_t i = 1; i < values.size(); ++i)
        contiguous = contiguous && values[i] == values[i - 1] + 1;
    if (contiguous)
        return std::to_string(values.front()) + ".." + std::to_string(values.back());
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i)
        s += (i ? "," : "") + std::to_string(values[i]);
    return s;
}

void apply_setting(Settings &s, const std::string &raw_key, const std::string &raw_value)
{
    const std::string key = trim(raw_key);
    const std::string value = trim(raw_value);
    ExperimentConfig &c = s.cfg;
    if (key == "n_t")
    {
        const auto v = bit_grid(key, value);
        s.nt_grid.clear();
        for (int n : v)
        {
            if (n < 1)
                throw ConfigError("n_t must be at least 1");
            s.nt_grid.push_back(static_cast<std::size_t>(n));
        }
        c.n_t = s.nt_grid.front();
    }
    else if (key == "b")
    {
        s.b_grid = bit_grid(key, value);
        c.b = s.b_grid.front();
    }
    else if (key == "b_prime")
    {
        s.bp_grid = bit_grid(key, value);
        c.b_prime = s.bp_grid.front();
    }
    else if (key == "snr_db")
        c.snr_db = parse_real(key, value);
    else if (key == "r_th")
        c.r_th = parse_real(key, value);
    else if (key == "n_samples")
        c.n_samples = parse_u64(key, value);
    else if (key == "seed")
        c.seed = parse_u64(key, value);
    else if (key == "delta_source")
    {
        const std::string prefix = "explicit:";
        if (value.rfind(prefix, 0) == 0)
        {
            c.delta_source = DeltaSource::explicit_value;
            c.explicit_delta = parse_real(key, value.substr(prefix.size()));
        }
        else
            c.delta_source = parse_delta_source(value);
    }
    else if (key == "explicit_delta")
        c.explicit_delta = parse_real(key, value);
    else if (key == "codebook_mode")
        c.codebook_mode = parse_codebook_mode(value);
    else if (key == "feasibility_mode")
        c.feasibility_mode = parse_feasibility_mode(value);
    else if (key == "independent_user_codebooks")
        c.independent_user_codebooks = parse_bool(key, value);
    else if (key == "condition_on_unsaturated")
        c.condition_on_unsaturated = parse_bool(key, value);
    else if (key == "train_samples")
        c.train_samples = parse_u64(key, value);
    else
        throw ConfigError("unknown configuration key '" + key + "'");
    s.keys_set.insert(key);
}

void apply_config_text(Settings &s, const std::string &text, const std::string &origin)
{
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        if (trim(line).empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(line_no) + ": expected key = value");
        try
        {
            apply_setting(s, line.substr(0, eq), line.substr(eq + 1));
        }
        catch (const ConfigError &e)
        {
            throw ConfigError(origin + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
}

void apply_config_file(Settings &s, const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot read config file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    apply_config_text(s, buf.str(), path);
}

std::string dump_config(const Settings &s)
{
    const ExperimentConfig &c = s.cfg;
    std::vector<int> nts(s.nt_grid.begin(), s.nt_grid.end());
    std::ostringstream o;
    o << "# noma-limfb configuration\n";
    o << "n_t = " << format_int_list(nts) << '\n';
    o << "b = " << format_int_list(s.b_grid) << '\n';
    o << "b_prime = " << format_int_list(s.bp_grid) << '\n';
    o << "snr_db = " << format_real(c.snr_db) << '\n';
    o << "r_th = " << format_real(c.r_th) << '\n';
    o << "n_samples = " << c.n_samples << '\n';
    o << "seed = " << c.seed << '\n';
    o << "delta_source = " << to_string(c.delta_source) << '\n';
    o << "explicit_delta = " << format_real(c.explicit_delta) << '\n';
    o << "codebook_mode = " << to_string(c.codebook_mode) << '\n';
    o << "feasibility_mode = " << to_string(c.feasibility_mode) << '\n';
    o << "independent_user_codebooks = " << (c.independent_user_codebooks ? "true" : "false") << '\n';
    o << "condition_on_unsaturated = " << (c.condition_on_unsaturated ? "true" : "false") << '\n';
    o << "train_samples = " << c.train_samples << '\n';
    return o.str();
}

namespace
{

using nlohmann::json;

struct Flags
{
    std::string config, nt, b, bp, snr, rth, samples, seed, delta_source, delta, codebook_mode, feasibility_mode,
        train_samples, out, plot_dir, dump, delta_cache;
    bool independent = false;
    bool condition = false;
    unsigned workers = default_workers();
    std::uint64_t index = 0;
};

struct FlagKey
{
    const char *flag;
    std::string Flags::*field;
    const char *key;
    const char *help;
};

const FlagKey flag_keys[] = {
    {"--nt", &Flags::nt, "n_t", "Transmit antennas N_t (list or a..b range where supported)"},
    {"--b", &Flags::b, "b", "CQI bits B (a..b range or comma list)"},
    {"--bprime", &Flags::bp, "b_prime", "PMI bits B' (a..b range or comma list)"},
    {"--snr-db", &Flags::snr, "snr_db", "P / sigma^2 in dB"},
    {"--rth", &Flags::rth, "r_th", "Rate threshold in bit/s/Hz"},
    {"--seed", &Flags::seed, "seed", "Master seed (falls back to $NOMA_LIMFB_SEED)"},
    {"--delta-source", &Flags::delta_source, "delta_source", "trained, table1, explicit or explicit:<value>"},
    {"--delta", &Flags::delta, "explicit_delta", "Explicit quantizer step (implies --delta-source explicit)"},
    {"--codebook-mode", &Flags::codebook_mode, "codebook_mode", "per_sample or fixed"},
    {"--feasibility-mode", &Flags::feasibility_mode, "feasibility_mode", "operational or conservative"},
    {"--train-samples", &Flags::train_samples, "train_samples", "Samples used to train delta"},
};

void add_common(CLI::App *sc, Flags &f, const char *samples_help)
{
    sc->add_option("--config", f.config, "Configuration file (key = value lines)");
    for (const auto &fk : flag_keys)
        sc->add_option(fk.flag, f.*(fk.field), fk.help);
    sc->add_option("--samples", f.samples, samples_help);
    sc->add_flag("--independent-codebooks", f.independent, "Draw a separate codebook for each user");
    sc->add_flag("--condition-unsaturated", f.condition, "Drop samples whose CQI saturates");
    sc->add_option("--workers", f.workers, "Worker threads")->check(CLI::PositiveNumber);
    sc->add_option("--out", f.out, "Output file");
    sc->add_option("--dump-config", f.dump, "Write the effective configuration to this file ('-' for stdout) and exit");
    sc->add_option("--delta-cache", f.delta_cache, "Trained-delta cache file (read and updated)");
}

Settings build_settings(const Flags &f, Settings s, const std::string &samples_key)
{
    if (const char *env = std::getenv(seed_env_var))
    {
        apply_setting(s, "seed", env);
        s.keys_set.erase("seed");
    }
    if (!f.config.empty())
        apply_config_file(s, f.config);
    for (const auto &fk : flag_keys)
        if (!(f.*(fk.field)).empty())
            apply_setting(s, fk.key, f.*(fk.field));
    if (!f.delta.empty() && f.delta_source.empty())
        apply_setting(s, "delta_source", "explicit");
    if (!f.samples.empty())
        apply_setting(s, samples_key, f.samples);
    if (f.independent)
        apply_setting(s, "independent_user_codebooks", "true");
    if (f.condition)
        apply_setting(s, "condition_on_unsaturated", "true");
    return s;
}

void write_text(const std::string &path, const std::string &text, std::ostream &out)
{
    if (path == "-")
    {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot write " + path);
    f << text;
}

void require_single_nt(const Settings &s, const char *cmd)
{
    if (s.nt_grid.size() != 1)
        throw ConfigError(std::string(cmd) + " takes a single n_t");
}

std::string fmt(double v)
{
    return format_6g(v);
}

int cmd_sweep(const Settings &s, const Flags &f, DeltaCache *cache, std::ostream &out)
{
    require_single_nt(s, "sweep");
    if (f.out.empty())
        throw ConfigError("sweep needs --out");
    const auto rows = run_sweep(s.cfg, s.b_grid, s.bp_grid, f.workers, cache);
    write_sweep_csv(rows, f.out);
    for (const auto &r : rows)
        out << "B=" << r.b << " B'=" << r.b_prime << " delta=" << fmt(r.delta) << " loss=" << fmt(r.mean_rate_loss)
            << " +/- " << fmt(r.ci_rate_loss) << " lf=" << fmt(r.mean_sum_rate_lf)
            << " full=" << fmt(r.mean_sum_rate_full) << " both=" << fmt(r.frac_feasible_both)
            << " violations=" << r.bound_violations << '\n';
    out << "wrote " << rows.size() << " rows to " << f.out << '\n';
    if (!f.plot_dir.empty())
    {
        const auto files = emit_plot_data(rows, f.plot_dir);
        out << "wrote " << files.size() << " plot series to " << f.plot_dir << '\n';
    }
    return exit_ok;
}

int cmd_train(const Settings &s, const Flags &f, DeltaCache *cache, std::ostream &out)
{
    DeltaCache local;
    DeltaCache &dc = cache ? *cache : local;
    DeltaCache result;
    for (std::size_t nt : s.nt_grid)
    {
        ExperimentConfig c = s.cfg;
        c.n_t = nt;
        c.delta_source = DeltaSource::trained;
        c.validate();
        pretrain_deltas(c, s.b_grid, s.bp_grid, dc);
        out << "N_t=" << nt << " seed=" << c.seed << " samples=" << c.train_samples << '\n';
        out << std::setw(6) << "B'\\B";
        for (int b : s.b_grid)
            out << std::setw(10) << b;
        out << '\n';
        for (int bp : s.bp_grid)
        {
            out << std::setw(6) << bp;
            for (int b : s.b_grid)
            {
                const double d = *dc.find(b, bp, nt, c.seed);
                result.insert(b, bp, nt, c.seed, d);
                out << std::setw(10) << fmt(d);
            }
            out << '\n';
        }
        for (int bp : s.bp_grid)
            for (int b : s.b_grid)
                if (const auto t = table1_delta(b, bp))
                {
                    const double d = *dc.find(b, bp, nt, c.seed);
                    out << "  (B=" << b << ", B'=" << bp << ") trained " << fmt(d) << " published " << fmt(*t)
                        << " relative difference " << fmt((d - *t) / *t) << '\n';
                }
    }
    if (!f.out.empty())
    {
        std::ostringstream os;
        result.write(os);
        write_text(f.out, os.str(), out);
        if (f.out != "-")
            out << "wrote " << result.entries().size() << " entries to " << f.out << '\n';
    }
    return exit_ok;
}

int cmd_stats(const Settings &s, const Flags &f, std::ostream &out)
{
    bool ok = true;
    std::ostringstream csv;
    csv << "Nt,name,target,observed,tolerance,relative,status\n";
    for (std::size_t nt : s.nt_grid)
    {
        const auto rep = validate_statistics(nt, s.bp_grid, s.cfg.n_samples, s.cfg.seed);
        out << "N_t=" << nt << " samples=" << rep.n_samples << " seed=" << rep.seed << '\n';
        for (const auto &c : rep.checks)
        {
            out << "  " << std::left << std::setw(24) << c.name << std::right << " target " << std::setw(10)
                << fmt(c.target) << " observed " << std::setw(10) << fmt(c.observed) << " tol "
                << fmt(c.tolerance) << (c.relative ? " rel " : " abs ") << to_string(c.status) << '\n';
            csv << nt << ',' << c.name << ',' << fmt(c.target) << ',' << fmt(c.observed) << ','
                << fmt(c.tolerance) << ',' << (c.relative ? "true" : "false") << ',' << to_string(c.status)
                << '\n';
        }
        ok = ok && rep.all_pass();
    }
    if (!f.out.empty())
        write_text(f.out, csv.str(), out);
    out << (ok ? "all statistics within tolerance" : "statistics out of tolerance") << '\n';
    return ok ? exit_ok : exit_violations;
}

int cmd_bounds(const Settings &s, const Flags &f, DeltaCache *cache, std::ostream &out)
{
    const std::size_t cells = s.nt_grid.size() * s.b_grid.size() * s.bp_grid.size();
    const std::size_t per_cell = (s.cfg.n_samples + cells - 1) / cells;
    const auto sum = run_bounds_check(s.cfg, s.nt_grid, s.b_grid, s.bp_grid, per_cell, f.workers, cache);
    std::ostringstream csv;
    csv << "Nt,B,Bprime,delta,samples_drawn,both_feasible,weak_saturated,order_mismatch,violations\n";
    for (const auto &c : sum.cells)
    {
        std::size_t v = 0;
        for (const auto &[name, n] : c.violations)
            v += n;
        out << "N_t=" << c.n_t << " B=" << c.b << " B'=" << c.b_prime << " delta=" << fmt(c.delta)
            << " both-feasible=" << c.both_feasible << "/" << c.samples_drawn << " saturated=" << c.saturated
            << " mismatched=" << c.order_mismatch << " violations=" << v;
        for (const auto &[name, n] : c.violations)
            out << ' ' << name << ':' << n << "(worst " << fmt(c.worst_slack.at(name)) << ')';
        out << '\n';
        csv << c.n_t << ',' << c.b << ',' << c.b_prime << ',' << fmt(c.delta) << ',' << c.samples_drawn << ','
            << c.both_feasible << ',' << c.saturated << ',' << c.order_mismatch << ',' << v << '\n';
    }
    if (!f.out.empty())
        write_text(f.out, csv.str(), out);
    for (const auto &[name, n] : sum.informational)
        out << "informational: " << name << " exceeded on " << n << " samples\n";
    out << sum.both_feasible << " both-feasible samples, " << sum.total_violations() << " violations";
    for (const auto &[name, n] : sum.violations)
        out << ' ' << name << ':' << n;
    out << '\n';
    return sum.total_violations() == 0 ? exit_ok : exit_violations;
}

json solution_json(const BetaSolution &b)
{
    json j;
    j["beta1_min"] = b.beta1_min;
    j["beta2_max"] = b.beta2_max;
    j["beta_sic_max"] = b.beta_sic_max;
    j["beta0"] = b.beta0 ? json(*b.beta0) : json(nullptr);
    j["beta_star"] = b.beta_star ? json(*b.beta_star) : json(nullptr);
    j["feasible"] = b.feasible;
    j["active_candidate"] = to_string(b.active_candidate);
    return j;
}

json rates_json(const std::optional<RateReport> &r)
{
    if (!r)
        return nullptr;
    return {{"r1", r->r1},       {"r2", r->r2},       {"r_sum", r->r_sum},
            {"sinr1", r->sinr1}, {"sinr2", r->sinr2}, {"sinr_1to2", r->sinr_1to2}};
}

int cmd_single(const Settings &s, const Flags &f, DeltaCache *cache, std::ostream &out)
{
    require_single_nt(s, "single");
    const Experiment e(s.cfg, cache);
    const SampleOutcome o = e.run_sample(f.index);
    const auto user = [](StrongUser u) { return u == StrongUser::first ? "first" : "second"; };
    json j;
    j["index"] = f.index;
    j["seed"] = s.cfg.seed;
    j["delta"] = e.delta();
    j["channel"] = {{"H1", o.H1},
                    {"H2", o.H2},
                    {"rho", o.rho},
                    {"cos_theta", o.cos_theta},
                    {"eta11", o.eta11},
                    {"eta22", o.eta22},
                    {"strong_user", user(o.strong_full)}};
    j["feasible"] = {{"full", o.feasible_full},
                     {"lf", o.feasible_lf},
                     {"both", o.feasible_both},
                     {"geometric", o.geometric_feasible}};
    j["order_mismatch"] = o.order_mismatch;
    j["excluded"] = o.excluded;
    j["full"] = {{"solution", solution_json(o.full_solution)},
                 {"rates", rates_json(o.full_rates)},
                 {"sum_rate", o.full_sum_rate},
                 {"fallback", o.fallback_full}};
    const FeedbackState &fb = o.feedback;
    j["feedback"] = {{"pmi", {fb.pmi_a, fb.pmi_b}},
                     {"cqi", {fb.cqi_a.value, fb.cqi_b.value}},
                     {"cqi_level", {fb.cqi_a.level, fb.cqi_b.level}},
                     {"saturated", {fb.saturated_a, fb.saturated_b}},
                     {"strong_user", user(fb.strong)},
                     {"g_hat", {{"g11", fb.g_hat.g11}, {"g22", fb.g_hat.g22}, {"g12", fb.g_hat.g12}, {"g21", fb.g_hat.g21}}}};
    j["lf"] = {{"solution", solution_json(o.lf_solution)},
               {"rates", rates_json(o.lf_rates)},
               {"sum_rate", o.lf_sum_rate},
               {"fallback", o.fallback_lf}};
    j["delta_r"] = o.delta_r ? json(*o.delta_r) : json(nullptr);
    j["delta_beta"] = o.delta_beta ? json(*o.delta_beta) : json(nullptr);
    if (o.bounds)
    {
        const BoundReport &b = *o.bounds;
        json v = json::array();
        for (const auto &x : b.violations)
            v.push_back({{"name", x.name}, {"slack", x.slack}});
        j["bounds"] = {{"delta_r", b.delta_r_actual},
                       {"delta_r1", b.delta_r1_actual},
                       {"delta_r2", b.delta_r2_actual},
                       {"theorem1", b.thm1_bound},
                       {"theorem1_statement", b.thm1_statement_bound},
                       {"lemma3", b.lemma3_bound},
                       {"lemma3_corrected", b.lemma3_corrected_bound},
                       {"lemma4", b.lemma4_bound},
                       {"s1_gap", b.s1_gap_actual},
                       {"s1_gap_bound", b.s1_gap_bound},
                       {"s1_gap_tight_bound", b.s1_gap_tight_bound},
                       {"interference_gap", b.interference_gap_actual},
                       {"interference_gap_bound", b.interference_gap_bound},
                       {"violations", v}};
    }
    else
        j["bounds"] = nullptr;
    const std::string text = j.dump(2) + "\n";
    write_text(f.out.empty() ? "-" : f.out, text, out);
    return exit_ok;
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Link-level simulator for limited-feedback two-user MISO-NOMA downlink"};
    app.require_subcommand(1);
    Flags f;

    auto *sweep = app.add_subcommand("sweep", "Monte Carlo sweep over a B x B' grid, CSV output");
    add_common(sweep, f, "Monte Carlo samples per grid cell");
    sweep->add_option("--plot-dir", f.plot_dir, "Directory for plot-ready series files");

    auto *train = app.add_subcommand("train-delta", "Train the CQI quantizer step for a B x B' grid");
    add_common(train, f, "Training samples per B'");

    auto *stats = app.add_subcommand("validate-stats", "Compare channel and codebook statistics with closed forms");
    add_common(stats, f, "Samples");

    auto *bounds = app.add_subcommand("bounds-check", "Sample-wise verification of the rate-loss bounds");
    add_common(bounds, f, "Total both-feasible samples, split evenly over the grid");

    auto *single = app.add_subcommand("single", "Trace one sample as JSON");
    add_common(single, f, "Unused");
    single->add_option("--index", f.index, "Sample index");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        out << app.help();
        return exit_ok;
    }
    catch (const CLI::CallForAllHelp &e)
    {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    }
    catch (const CLI::ParseError &e)
    {
        err << "error: " << e.what() << "\n\n" << app.help();
        return exit_config;
    }

    CLI::App *cmd = app.get_subcommands().front();
    try
    {
        Settings defaults;
        std::string samples_key = "n_samples";
        if (cmd == train)
            samples_key = "train_samples";
        if (cmd == stats)
        {
            defaults.cfg.n_t = 4;
            defaults.nt_grid = {4};
            defaults.bp_grid = {4, 6, 8};
        }
        if (cmd == bounds)
        {
            defaults.nt_grid = {2, 4};
            defaults.b_grid = {1, 3, 6};
            defaults.bp_grid = {1, 3, 6};
            defaults.cfg.b = 1;
            defaults.cfg.b_prime = 1;
        }
        if (cmd == train)
        {
            defaults.b_grid = {1, 2, 3, 4, 5, 6};
            defaults.bp_grid = {1, 2, 3, 4, 5, 6};
            defaults.cfg.b = 1;
            defaults.cfg.b_prime = 1;
        }
        const Settings s = build_settings(f, defaults, samples_key);
        s.cfg.validate();

        if (!f.dump.empty())
        {
            write_text(f.dump, dump_config(s), out);
            return exit_ok;
        }

        std::optional<DeltaCache> cache;
        if (!f.delta_cache.empty())
            cache.emplace(f.delta_cache);
        DeltaCache *cp = cache ? &*cache : nullptr;

        int code = exit_ok;
        if (cmd == sweep)
            code = cmd_sweep(s, f, cp, out);
        else if (cmd == train)
            code = cmd_train(s, f, cp, out);
        else if (cmd == stats)
            code = cmd_stats(s, f, out);
        else if (cmd == bounds)
            code = cmd_bounds(s, f, cp, out);
        else
            code = cmd_single(s, f, cp, out);
        if (cache)
            cache->save();
        return code;
    }
    catch (const ConfigError &e)
    {
        err << "configuration error: " << e.what() << "\n\n" << cmd->help();
        return exit_config;
    }
    catch (const std::invalid_argument &e)
    {
        err << "configuration error: " << e.what() << '\n';
        return exit_config;
    }
    catch (const std::exception &e)
    {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace noma::cli
