#include "hyperspec/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <thread>

#include "hyperspec/errors.hpp"
#include "hyperspec/expansion.hpp"
#include "hyperspec/nbops.hpp"
#include "hyperspec/sampler.hpp"
#include "hyperspec/spectra.hpp"
#include "hyperspec/walks.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace hyperspec {

namespace {

// Everything produced for one seed; files are buffered here so the
// writer can emit them sorted by seed regardless of completion order.
struct SeedResult {
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, std::string>> files;  // (name, contents)
    ordered_json summary_entry;
};

int worker_cap(std::size_t jobs) {
    int cap = static_cast<int>(std::thread::hardware_concurrency());
    if (cap < 1) cap = 1;
    if (const char* env = std::getenv("HYPERSPEC_THREADS")) {
        const int requested = std::atoi(env);
        if (requested >= 1) cap = std::min(cap, requested);
    }
    return std::min<int>(cap, static_cast<int>(jobs));
}

std::string seed_name(const std::string& command, std::uint64_t seed, const std::string& ext) {
    return command + "_seed" + std::to_string(seed) + "." + ext;
}

ordered_json report_json(const SampleReport& rep) {
    ordered_json j;
    j["attempts"] = rep.attempts;
    j["multiedge_rejections"] = rep.multiedge_rejections;
    j["duplicate_neighborhood_rejections"] = rep.duplicate_neighborhood_rejections;
    j["rng"] = rep.rng;
    j["scheme"] = rep.scheme;
    return j;
}

// Normalized bulk ESD: Perron eigenvalue dropped, remaining spectrum
// mapped through x -> (x - (k-2)) / sqrt((d-1)(k-1)).
ESD bulk_esd(const Hypergraph& h, const RealSpectrum& spectrum) {
    RealSpectrum bulk;
    bulk.values.assign(spectrum.values.begin() + 1, spectrum.values.end());
    const double q = static_cast<double>(h.d - 1) * (h.k - 1);
    return esd_of(bulk, static_cast<double>(h.k - 2), std::sqrt(q));
}

SeedResult run_sample(const ExperimentSpec& spec, std::uint64_t seed) {
    auto [h, rep] = sample_regular_hypergraph({spec.n, spec.d, spec.k, seed});
    SeedResult r;
    r.seed = seed;
    r.files.emplace_back(seed_name(spec.command, seed, "json"), to_json(h) + "\n");
    r.summary_entry = report_json(rep);
    return r;
}

SeedResult run_gap(const ExperimentSpec& spec, std::uint64_t seed) {
    auto [h, rep] = sample_regular_hypergraph({spec.n, spec.d, spec.k, seed});
    const GapReport gap = adjacency_gap(h);
    SeedResult r;
    r.seed = seed;
    r.files.emplace_back(seed_name(spec.command, seed, "json"), to_json(gap) + "\n");
    r.summary_entry["lambda1"] = gap.lambda1;
    r.summary_entry["lambda2"] = gap.lambda2;
    r.summary_entry["lambda_min"] = gap.lambda_min;
    r.summary_entry["lambda"] = gap.lambda;
    r.summary_entry["ramanujan_margin"] = gap.ramanujan_margin;
    r.summary_entry["within_slack"] = gap.ramanujan_margin >= -spec.slack;
    return r;
}

SeedResult run_esd(const ExperimentSpec& spec, std::uint64_t seed, const Density& reference) {
    auto [h, rep] = sample_regular_hypergraph({spec.n, spec.d, spec.k, seed});
    const RealSpectrum spectrum = symmetric_eigenvalues(adjacency_matrix(h));
    const ESD e = bulk_esd(h, spectrum);
    const double ks = ks_distance(e, reference);

    SeedResult r;
    r.seed = seed;
    if (spec.format == "csv") {
        const double pad = 0.25;
        r.files.emplace_back(
            seed_name(spec.command, seed, "csv"),
            histogram_csv(e, reference.support_lo() - pad, reference.support_hi() + pad, 60));
    } else {
        r.files.emplace_back(seed_name(spec.command, seed, "json"), to_json(e) + "\n");
    }
    r.summary_entry["ks_distance"] = ks;
    r.summary_entry["lambda1"] = spectrum.values.front();
    return r;
}

SeedResult run_nb_spectrum(const ExperimentSpec& spec, std::uint64_t seed) {
    auto [h, rep] = sample_regular_hypergraph({spec.n, spec.d, spec.k, seed});
    const NBClassification cls = classify_nb_spectrum(h);
    const NBGapResult gap = nb_gap_check(h, spec.slack);

    ordered_json file = ordered_json::parse(to_json(cls));
    file["lambda2_modulus"] = gap.lambda2_modulus;
    file["gap_bound"] = gap.bound;
    file["gap_ok"] = gap.ok;

    SeedResult r;
    r.seed = seed;
    r.files.emplace_back(seed_name(spec.command, seed, "json"), file.dump() + "\n");
    r.summary_entry["reconciled"] = cls.reconciled;
    r.summary_entry["rank_x"] = cls.rank_x;
    r.summary_entry["lambda2_modulus"] = gap.lambda2_modulus;
    r.summary_entry["gap_ok"] = gap.ok;
    return r;
}

SeedResult run_walk_mix(const ExperimentSpec& spec, std::uint64_t seed) {
    auto [h, rep] = sample_regular_hypergraph({spec.n, spec.d, spec.k, seed});
    SeedResult r;
    r.seed = seed;
    const bool connected = is_connected(h);
    r.summary_entry["connected"] = connected;
    if (!connected) {
        // no spectral gap to measure against; keep the seed visible
        ordered_json file;
        file["connected"] = false;
        r.files.emplace_back(seed_name(spec.command, seed, "json"), file.dump() + "\n");
        return r;
    }
    const MixingReport mix = srw_mixing_empirical(h, spec.lmax);
    if (spec.format == "csv")
        r.files.emplace_back(seed_name(spec.command, seed, "csv"), mixing_csv(mix));
    else
        r.files.emplace_back(seed_name(spec.command, seed, "json"), to_json(mix) + "\n");
    r.summary_entry["exact_rate"] = mix.exact_rate;
    r.summary_entry["empirical_rate"] = mix.empirical_rate;
    r.summary_entry["fitted_rate"] = mix.fitted_rate;
    r.summary_entry["abs_error"] = std::fabs(mix.empirical_rate - mix.exact_rate);
    return r;
}

SeedResult run_expansion(const ExperimentSpec& spec, std::uint64_t seed) {
    auto [h, rep] = sample_regular_hypergraph({spec.n, spec.d, spec.k, seed});
    const GapReport gap = adjacency_gap(h);
    // distinct sub-streams for the two subset ensembles
    const ExpansionReport mixing = verify_expander_mixing(h, gap, spec.trials, seed * 2 + 1);
    const ExpansionReport vertex = verify_vertex_expansion(h, gap, spec.trials, seed * 2 + 2);

    ordered_json file;
    file["mixing"] = ordered_json::parse(to_json(mixing));
    file["vertex"] = ordered_json::parse(to_json(vertex));

    SeedResult r;
    r.seed = seed;
    r.files.emplace_back(seed_name(spec.command, seed, "json"), file.dump() + "\n");
    r.summary_entry["mixing_violations"] = mixing.violations;
    r.summary_entry["mixing_worst_slack"] = mixing.worst_slack;
    r.summary_entry["vertex_violations"] = vertex.violations;
    r.summary_entry["vertex_worst_slack"] = vertex.worst_slack;
    return r;
}

SeedResult run_local_law(const ExperimentSpec& spec, std::uint64_t seed,
                         const Density& reference) {
    auto [h, rep] = sample_regular_hypergraph({spec.n, spec.d, spec.k, seed});
    const RealSpectrum spectrum = symmetric_eigenvalues(adjacency_matrix(h));
    const ESD e = bulk_esd(h, spectrum);

    const LocalLawParams params = local_law_params(spec.n, spec.k);
    const double alpha = static_cast<double>(spec.d) / spec.k;
    const double delta = 0.5;
    // full-bulk interval; the width precondition is reported via `ok`
    const double lo = -1.9, hi = 2.0;
    const LocalLawCheck check = local_law_check(e, reference, lo, hi, params, alpha, delta);

    ordered_json file;
    file["interval"] = {lo, hi};
    file["h"] = params.h;
    file["r"] = params.r;
    file["eta"] = params.eta;
    file["delta"] = delta;
    file["lhs"] = check.lhs;
    file["allowed_width"] = check.allowed_width;
    file["ok"] = check.ok;
    file["ratio"] = check.ratio;

    SeedResult r;
    r.seed = seed;
    r.files.emplace_back(seed_name(spec.command, seed, "json"), file.dump() + "\n");
    r.summary_entry["lhs"] = check.lhs;
    r.summary_entry["ratio"] = check.ratio;
    r.summary_entry["ok"] = check.ok;
    return r;
}

void validate(const ExperimentSpec& spec) {
    static const std::vector<std::string> commands = {
        "sample", "gap", "esd", "nb-spectrum", "walk-mix", "expansion", "local-law"};
    if (std::find(commands.begin(), commands.end(), spec.command) == commands.end())
        throw InvalidParameters("unknown command: " + spec.command);
    if (spec.format != "json" && spec.format != "csv")
        throw InvalidParameters("format must be json or csv");
    if (spec.seeds.empty()) throw InvalidParameters("at least one seed required");
    if (spec.n < 1 || spec.d < 1 || spec.k < 1)
        throw InvalidParameters("n, d, k must be positive");
    if (spec.command == "nb-spectrum" &&
        static_cast<std::size_t>(spec.n) * spec.d > kNonsymmetricCap)
        throw InvalidParameters("nb-spectrum needs n*d <= " +
                                std::to_string(kNonsymmetricCap));
    if (spec.command == "walk-mix" && spec.lmax < 10)
        throw InvalidParameters("walk-mix needs --lmax >= 10");
    if (spec.command == "expansion" && spec.trials < 1)
        throw InvalidParameters("expansion needs --trials >= 1");
    if (spec.slack < 0.0) throw InvalidParameters("slack must be nonnegative");
}

SeedResult run_seed(const ExperimentSpec& spec, std::uint64_t seed, const Density* reference) {
    if (spec.command == "sample") return run_sample(spec, seed);
    if (spec.command == "gap") return run_gap(spec, seed);
    if (spec.command == "esd") return run_esd(spec, seed, *reference);
    if (spec.command == "nb-spectrum") return run_nb_spectrum(spec, seed);
    if (spec.command == "walk-mix") return run_walk_mix(spec, seed);
    if (spec.command == "expansion") return run_expansion(spec, seed);
    return run_local_law(spec, seed, *reference);
}

void write_file(const fs::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string());
    out << contents;
    if (!out) throw IoError("write failed for " + path.string());
}

ordered_json aggregate(const ExperimentSpec& spec, const std::vector<SeedResult>& results) {
    ordered_json agg;
    const std::size_t total = results.size();
    if (spec.command == "gap") {
        std::size_t good = 0;
        for (const auto& r : results)
            if (r.summary_entry.at("within_slack").get<bool>()) ++good;
        agg["slack"] = spec.slack;
        agg["fraction_within_slack"] = static_cast<double>(good) / total;
    } else if (spec.command == "esd") {
        std::vector<double> ks;
        for (const auto& r : results) ks.push_back(r.summary_entry.at("ks_distance"));
        std::sort(ks.begin(), ks.end());
        agg["median_ks"] = total % 2 ? ks[total / 2]
                                     : 0.5 * (ks[total / 2 - 1] + ks[total / 2]);
    } else if (spec.command == "nb-spectrum") {
        std::size_t rec = 0, gap_ok = 0;
        for (const auto& r : results) {
            if (r.summary_entry.at("reconciled").get<bool>()) ++rec;
            if (r.summary_entry.at("gap_ok").get<bool>()) ++gap_ok;
        }
        agg["slack"] = spec.slack;
        agg["fraction_reconciled"] = static_cast<double>(rec) / total;
        agg["fraction_gap_ok"] = static_cast<double>(gap_ok) / total;
    } else if (spec.command == "walk-mix") {
        double worst = 0.0;
        std::size_t connected = 0;
        for (const auto& r : results) {
            if (!r.summary_entry.at("connected").get<bool>()) continue;
            ++connected;
            worst = std::max(worst, r.summary_entry.at("abs_error").get<double>());
        }
        agg["connected_seeds"] = connected;
        agg["max_abs_error"] = worst;
    } else if (spec.command == "expansion") {
        long long violations = 0;
        double worst = std::numeric_limits<double>::infinity();
        for (const auto& r : results) {
            violations += r.summary_entry.at("mixing_violations").get<long long>() +
                          r.summary_entry.at("vertex_violations").get<long long>();
            worst = std::min({worst, r.summary_entry.at("mixing_worst_slack").get<double>(),
                              r.summary_entry.at("vertex_worst_slack").get<double>()});
        }
        agg["total_violations"] = violations;
        agg["worst_slack"] = worst;
    } else if (spec.command == "local-law") {
        double worst = 0.0;
        for (const auto& r : results)
            worst = std::max(worst, r.summary_entry.at("ratio").get<double>());
        agg["max_ratio"] = worst;
    }
    return agg;
}

}  // namespace

int run(const ExperimentSpec& spec) {
    try {
        validate(spec);

        // reference density shared across seeds (also validates d >= k etc.
        // before any sampling starts)
        Density reference;
        const Density* ref_ptr = nullptr;
        if (spec.command == "esd" || spec.command == "local-law") {
            reference = make_feng_li_density(spec.d, spec.k);
            ref_ptr = &reference;
        }

        fs::create_directories(spec.output_dir);

        std::vector<SeedResult> results(spec.seeds.size());
        std::vector<std::exception_ptr> failures(spec.seeds.size());
        std::atomic<std::size_t> next{0};
        auto work = [&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= spec.seeds.size()) return;
                try {
                    results[i] = run_seed(spec, spec.seeds[i], ref_ptr);
                } catch (...) {
                    failures[i] = std::current_exception();
                }
            }
        };
        const int workers = worker_cap(spec.seeds.size());
        if (workers <= 1) {
            work();
        } else {
            std::vector<std::thread> pool;
            for (int w = 0; w < workers; ++w) pool.emplace_back(work);
            for (auto& t : pool) t.join();
        }

        // deterministic aggregation order: by seed, input order on ties
        std::vector<std::size_t> order(results.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return spec.seeds[a] < spec.seeds[b];
        });

        // write whatever succeeded before reporting the first failure
        const fs::path dir(spec.output_dir);
        std::exception_ptr first_failure;
        ordered_json seed_entries = ordered_json::array();
        for (std::size_t i : order) {
            if (failures[i]) {
                if (!first_failure) first_failure = failures[i];
                continue;
            }
            for (const auto& [name, contents] : results[i].files)
                write_file(dir / name, contents);
            ordered_json entry;
            entry["seed"] = results[i].seed;
            for (auto& [key, value] : results[i].summary_entry.items()) entry[key] = value;
            seed_entries.push_back(std::move(entry));
        }

        ordered_json summary;
        summary["command"] = spec.command;
        summary["n"] = spec.n;
        summary["d"] = spec.d;
        summary["k"] = spec.k;
        summary["format"] = spec.format;
        if (spec.command == "walk-mix") summary["lmax"] = spec.lmax;
        if (spec.command == "expansion") summary["trials"] = spec.trials;
        summary["seeds_requested"] = spec.seeds.size();
        summary["seeds_completed"] = seed_entries.size();
        summary["results"] = std::move(seed_entries);
        if (!first_failure) {
            std::vector<SeedResult> ordered;
            ordered.reserve(results.size());
            for (std::size_t i : order) ordered.push_back(std::move(results[i]));
            const ordered_json agg = aggregate(spec, ordered);
            for (auto& [key, value] : agg.items()) summary[key] = value;
        }
        write_file(dir / "summary.json", summary.dump(2) + "\n");

        if (first_failure) std::rethrow_exception(first_failure);
        return kExitOk;
    } catch (const InvalidParameters& ex) {
        std::cerr << "hyperspec: invalid parameters: " << ex.what() << "\n";
        return kExitInvalidParameters;
    } catch (const IoError& ex) {
        std::cerr << "hyperspec: i/o error: " << ex.what() << "\n";
        return kExitIo;
    } catch (const fs::filesystem_error& ex) {
        std::cerr << "hyperspec: i/o error: " << ex.what() << "\n";
        return kExitIo;
    } catch (const std::exception& ex) {
        std::cerr << "hyperspec: internal error: " << ex.what() << "\n";
        return kExitInternal;
    }
}

}  // namespace hyperspec
