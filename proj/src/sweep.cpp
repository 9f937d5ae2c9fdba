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

#include "noma/sweep.hpp"

#include "noma/summation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>

namespace noma
{

unsigned default_workers()
{
    const unsigned n = std::thread::hardware_concurrency();
    return n ? n : 1;
}

namespace
{

struct CellAccum
{
    MomentAccumulator loss;
    MomentAccumulator lf;
    MomentAccumulator full;
    CompensatedSum abs_delta_beta;
    std::size_t n = 0;
    std::size_t feasible_full = 0;
    std::size_t feasible_lf = 0;
    std::size_t both = 0;
    std::size_t violations = 0;
    std::size_t mismatches = 0;

    void add(const SampleOutcome &o)
    {
        if (o.excluded)
            return;
        ++n;
        lf.add(o.lf_sum_rate);
        full.add(o.full_sum_rate);
        feasible_full += o.feasible_full;
        feasible_lf += o.feasible_lf;
        mismatches += o.order_mismatch;
        if (!o.feasible_both)
            return;
        ++both;
        loss.add(*o.delta_r);
        abs_delta_beta.add(std::abs(*o.delta_beta));
        if (o.bounds && !o.bounds->violations.empty())
            ++violations;
    }

    void merge(const CellAccum &o)
    {
        loss.merge(o.loss);
        lf.merge(o.lf);
        full.merge(o.full);
        abs_delta_beta.add(o.abs_delta_beta.value());
        n += o.n;
        feasible_full += o.feasible_full;
        feasible_lf += o.feasible_lf;
        both += o.both;
        violations += o.violations;
        mismatches += o.mismatches;
    }
};

// Runs job(k) for k in [0, count) on up to `workers` threads; the first exception is rethrown.
template <class Job> void parallel_for(std::size_t count, unsigned workers, Job job)
{
    const std::size_t threads = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
    if (threads == 1)
    {
        for (std::size_t k = 0; k < count; ++k)
            job(k);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto run = [&] {
        for (std::size_t k = next++; k < count; k = next++)
        {
            try
            {
                job(k);
            }
            catch (...)
            {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                next = count;
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t)
        pool.emplace_back(run);
    for (auto &th : pool)
        th.join();
    if (error)
        std::rethrow_exception(error);
}

void check_grid(const std::vector<int> &grid, const char *name, int hi)
{
    if (grid.empty())
        throw ConfigError(std::string(name) + " grid is empty");
    for (int v : grid)
        if (v < 1 || v > hi)
            throw ConfigError(std::string(name) + " grid values must be in [1, 20]");
}

double cell_delta(const ExperimentConfig &cfg, DeltaCache &cache)
{
    if (cfg.delta_source == DeltaSource::trained)
        return cache.get_or_train(cfg.b, cfg.b_prime, cfg.n_t, cfg.seed, cfg.train_samples);
    return resolve_delta(cfg);
}

ExperimentConfig with_cell(ExperimentConfig cfg, int b, int b_prime)
{
    cfg.b = b;
    cfg.b_prime = b_prime;
    return cfg;
}

} // namespace

void pretrain_deltas(const ExperimentConfig &base, const std::vector<int> &b_grid, const std::vector<int> &bp_grid,
                     DeltaCache &cache)
{
    if (base.delta_source != DeltaSource::trained)
        return;
    for (int bp : std::set<int>(bp_grid.begin(), bp_grid.end()))
    {
        std::vector<int> missing;
        for (int b : std::set<int>(b_grid.begin(), b_grid.end()))
            if (!cache.find(b, bp, base.n_t, base.seed))
                missing.push_back(b);
        if (missing.empty())
            continue;
        const auto samples = draw_training_samples(bp, base.n_t, base.train_samples, base.seed);
        for (int b : missing)
            cache.insert(b, bp, base.n_t, base.seed, train_delta_from_samples(samples, b));
    }
}

std::vector<SweepRow> run_sweep(const ExperimentConfig &base, const std::vector<int> &b_grid,
                                const std::vector<int> &bp_grid, unsigned workers, DeltaCache *cache)
{
    base.validate();
    check_grid(b_grid, "B", max_cqi_bits);
    check_grid(bp_grid, "Bprime", max_codebook_bits);

    DeltaCache local;
    DeltaCache &dc = cache ? *cache : local;
    pretrain_deltas(base, b_grid, bp_grid, dc);

    std::vector<Experiment> cells;
    std::vector<int> cell_bp;
    for (int bp : bp_grid)
        for (int b : b_grid)
        {
            const ExperimentConfig cfg = with_cell(base, b, bp);
            cfg.validate();
            cells.emplace_back(cfg, cell_delta(cfg, dc));
            cell_bp.push_back(bp);
        }

    const int max_bp = *std::max_element(bp_grid.begin(), bp_grid.end());
    std::vector<int> distinct_bp(bp_grid);
    std::sort(distinct_bp.begin(), distinct_bp.end());
    distinct_bp.erase(std::unique(distinct_bp.begin(), distinct_bp.end()), distinct_bp.end());
    auto bp_slot = [&](int bp) {
        return static_cast<std::size_t>(std::lower_bound(distinct_bp.begin(), distinct_bp.end(), bp) -
                                        distinct_bp.begin());
    };
    auto nested = [&](const std::pair<Codebook, Codebook> &full) {
        std::vector<std::pair<Codebook, Codebook>> out;
        for (int bp : distinct_bp)
            out.emplace_back(full.first.prefix(bp), full.second.prefix(bp));
        return out;
    };

    std::vector<std::pair<Codebook, Codebook>> fixed_books;
    if (base.codebook_mode == CodebookMode::fixed)
        fixed_books =
            nested(sample_codebooks(base.seed, run_level_index, max_bp, base.n_t, base.independent_user_codebooks));

    const std::size_t n = base.n_samples;
    const std::size_t n_blocks = (n + sweep_block_size - 1) / sweep_block_size;
    std::vector<std::vector<CellAccum>> partial(n_blocks, std::vector<CellAccum>(cells.size()));

    parallel_for(n_blocks, workers, [&](std::size_t blk) {
        auto &acc = partial[blk];
        const std::size_t end = std::min(n, (blk + 1) * sweep_block_size);
        for (std::size_t i = blk * sweep_block_size; i < end; ++i)
        {
            const auto [h_a, h_b] = sample_channels(base.seed, i, base.n_t);
            std::vector<std::pair<Codebook, Codebook>> per_sample;
            if (base.codebook_mode == CodebookMode::per_sample)
                per_sample = nested(
                    sample_codebooks(base.seed, i, max_bp, base.n_t, base.independent_user_codebooks));
            const auto &books = base.codebook_mode == CodebookMode::per_sample ? per_sample : fixed_books;
            for (std::size_t c = 0; c < cells.size(); ++c)
            {
                const auto &cb = books[bp_slot(cell_bp[c])];
                acc[c].add(cells[c].evaluate(h_a, h_b, cb.first, cb.second));
            }
        }
    });

    std::vector<SweepRow> rows;
    for (std::size_t c = 0; c < cells.size(); ++c)
    {
        CellAccum total;
        for (const auto &blk : partial)
            total.merge(blk[c]);
        const ExperimentConfig &cfg = cells[c].config();
        SweepRow r;
        r.b = cfg.b;
        r.b_prime = cfg.b_prime;
        r.n_t = cfg.n_t;
        r.snr_db = cfg.snr_db;
        r.r_th = cfg.r_th;
        r.n_samples = total.n;
        r.seed = cfg.seed;
        r.delta = cells[c].delta();
        r.mean_rate_loss = total.loss.mean();
        r.ci_rate_loss = total.loss.half_width();
        r.mean_sum_rate_lf = total.lf.mean();
        r.ci_sum_rate_lf = total.lf.half_width();
        r.mean_sum_rate_full = total.full.mean();
        r.ci_sum_rate_full = total.full.half_width();
        const double denom = total.n ? static_cast<double>(total.n) : 1.0;
        r.frac_feasible_full = static_cast<double>(total.feasible_full) / denom;
        r.frac_feasible_lf = static_cast<double>(total.feasible_lf) / denom;
        r.frac_feasible_both = static_cast<double>(total.both) / denom;
        r.mean_abs_delta_beta = total.both ? total.abs_delta_beta.value() / static_cast<double>(total.both) : 0.0;
        r.n_both = total.both;
        r.bound_violations = total.violations;
        r.order_mismatches = total.mismatches;
        rows.push_back(r);
    }
    return rows;
}

const char *const sweep_csv_header =
    "B,Bprime,Nt,snr_db,r_th,n_samples,seed,mean_rate_loss,ci_rate_loss,mean_sum_rate_lf,mean_sum_rate_full,"
    "frac_feasible_full,frac_feasible_lf,frac_feasible_both,mean_abs_delta_beta,bound_violations";

void write_sweep_csv(const std::vector<SweepRow> &rows, std::ostream &out)
{
    out << sweep_csv_header << '\n';
    for (const auto &r : rows)
    {
        out << r.b << ',' << r.b_prime << ',' << r.n_t << ',' << format_6g(r.snr_db) << ',' << format_6g(r.r_th)
            << ',' << r.n_samples << ',' << r.seed << ',' << format_6g(r.mean_rate_loss) << ','
            << format_6g(r.ci_rate_loss) << ',' << format_6g(r.mean_sum_rate_lf) << ','
            << format_6g(r.mean_sum_rate_full) << ',' << format_6g(r.frac_feasible_full) << ','
            << format_6g(r.frac_feasible_lf) << ',' << format_6g(r.frac_feasible_both) << ','
            << format_6g(r.mean_abs_delta_beta) << ',' << r.bound_violations << '\n';
    }
}

void write_sweep_csv(const std::vector<SweepRow> &rows, const std::string &path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    write_sweep_csv(rows, out);
    if (!out)
        throw std::runtime_error("write failed for " + path);
}

std::vector<std::string> emit_plot_data(const std::vector<SweepRow> &rows, const std::string &dir)
{
    if (rows.empty())
        throw ConfigError("no sweep rows to plot");
    std::filesystem::create_directories(dir);

    std::map<int, std::vector<const SweepRow *>> by_bp;
    for (const auto &r : rows)
        by_bp[r.b_prime].push_back(&r);
    for (auto &[bp, series] : by_bp)
        std::stable_sort(series.begin(), series.end(), [](const SweepRow *x, const SweepRow *y) { return x->b < y->b; });

    std::vector<std::string> paths;
    auto write = [&](const std::string &name, const char *title, const std::vector<const SweepRow *> &series,
                     auto value, auto ci) {
        const std::string path = (std::filesystem::path(dir) / name).string();
        std::ofstream out(path);
        if (!out)
            throw std::runtime_error("cannot write " + path);
        out << "# B " << title << " ci\n";
        for (const SweepRow *r : series)
            out << r->b << ' ' << format_6g(value(*r)) << ' ' << format_6g(ci(*r)) << '\n';
        paths.push_back(path);
    };

    for (const auto &[bp, series] : by_bp)
    {
        const std::string tag = "bprime" + std::to_string(bp) + ".dat";
        write("rate_loss_" + tag, "mean_rate_loss", series, [](const SweepRow &r) { return r.mean_rate_loss; },
              [](const SweepRow &r) { return r.ci_rate_loss; });
        write("sum_rate_lf_" + tag, "mean_sum_rate_lf", series, [](const SweepRow &r) { return r.mean_sum_rate_lf; },
              [](const SweepRow &r) { return r.ci_sum_rate_lf; });
    }
    write("sum_rate_full.dat", "mean_sum_rate_full", by_bp.begin()->second,
          [](const SweepRow &r) { return r.mean_sum_rate_full; }, [](const SweepRow &r) { return r.ci_sum_rate_full; });
    return paths;
}

std::size_t BoundsCheckSummary::total_violations() const
{
    std::size_t t = 0;
    for (const auto &[name, count] : violations)
        t += count;
    return t;
}

BoundsCheckSummary run_bounds_check(const ExperimentConfig &base, const std::vector<std::size_t> &nt_grid,
                                    const std::vector<int> &b_grid, const std::vector<int> &bp_grid,
                                    std::size_t both_feasible_per_cell, unsigned workers, DeltaCache *cache)
{
    base.validate();
    check_grid(b_grid, "B", max_cqi_bits);
    check_grid(bp_grid, "Bprime", max_codebook_bits);
    if (nt_grid.empty())
        throw ConfigError("Nt grid is empty");
    if (both_feasible_per_cell == 0)
        throw ConfigError("bounds check needs a positive sample target");

    DeltaCache local;
    DeltaCache &dc = cache ? *cache : local;
    std::vector<ExperimentConfig> cfgs;
    for (std::size_t nt : nt_grid)
    {
        ExperimentConfig g = base;
        g.n_t = nt;
        pretrain_deltas(g, b_grid, bp_grid, dc);
        for (int bp : bp_grid)
            for (int b : b_grid)
            {
                ExperimentConfig cfg = with_cell(g, b, bp);
                cfg.validate();
                cfgs.push_back(cfg);
            }
    }
    std::vector<double> deltas;
    for (const auto &cfg : cfgs)
        deltas.push_back(cell_delta(cfg, dc));

    std::vector<BoundsCheckCell> cells(cfgs.size());
    parallel_for(cfgs.size(), workers, [&](std::size_t k) {
        const Experiment exp(cfgs[k], deltas[k]);
        BoundsCheckCell &cell = cells[k];
        cell.n_t = cfgs[k].n_t;
        cell.b = cfgs[k].b;
        cell.b_prime = cfgs[k].b_prime;
        cell.delta = exp.delta();
        const std::size_t cap = 100 * both_feasible_per_cell;
        for (std::uint64_t i = 0; cell.both_feasible < both_feasible_per_cell && i < cap; ++i)
        {
            const SampleOutcome o = exp.run_sample(i);
            ++cell.samples_drawn;
            if (!o.feasible_both)
                continue;
            ++cell.both_feasible;
            const bool weak_sat = o.strong_full == StrongUser::first ? o.feedback.saturated_b : o.feedback.saturated_a;
            cell.saturated += weak_sat;
            cell.order_mismatch += o.order_mismatch;
            const BoundReport &br = *o.bounds;
            for (const auto &v : br.violations)
            {
                ++cell.violations[v.name];
                auto it = cell.worst_slack.find(v.name);
                if (it == cell.worst_slack.end() || v.slack < it->second)
                    cell.worst_slack[v.name] = v.slack;
            }
            if (br.lemma3_corrected_bound - std::abs(br.delta_r1_actual) < -bound_slack)
                ++cell.informational["lemma3_corrected"];
            if (br.thm1_statement_bound - br.delta_r_actual < -bound_slack)
                ++cell.informational["theorem1_statement"];
        }
    });

    BoundsCheckSummary s;
    for (const auto &c : cells)
    {
        s.both_feasible += c.both_feasible;
        for (const auto &[name, count] : c.violations)
            s.violations[name] += count;
        for (const auto &[name, count] : c.informational)
            s.informational[name] += count;
    }
    s.cells = std::move(cells);
    return s;
}

} // namespace noma
