// Copyright 2026 The ovmkit Authors.
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

// File-based front end: ingest operator sequences / weight families /
// measures as JSON, run the analyses, emit structured verdict reports.
//
// Exit codes: 0 pass, 1 mathematical fail, 2 input error,
//             3 requested structure not found.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "ovmkit/atomic_ovm.hpp"
#include "ovmkit/errors.hpp"
#include "ovmkit/gallery.hpp"
#include "ovmkit/io.hpp"
#include "ovmkit/pair.hpp"
#include "ovmkit/recursive.hpp"
#include "ovmkit/sequence.hpp"
#include "ovmkit/shift.hpp"
#include "ovmkit/version.hpp"

namespace {

using nlohmann::json;
using namespace ovmkit;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInputError = 2;
constexpr int kExitNotFound = 3;

struct CommonOptions {
    std::string input_path;
    std::string out_path;
    std::string scheme = "canonical";
    int samples = 0;
    std::uint64_t seed = 0;
    double eps = tol::kPsdEps;
};

SampleScheme make_scheme(const CommonOptions &opts) {
    if (opts.scheme == "canonical") {
        return SampleScheme::canonical(opts.samples, opts.seed);
    }
    if (opts.scheme == "random") {
        const int count = opts.samples > 0 ? opts.samples : 200;
        return SampleScheme::random(count, opts.seed);
    }
    throw SchemaError("unknown sampling scheme: " + opts.scheme);
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw SchemaError("cannot open input file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

json parse_input(const std::string &text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
}

json base_report(const std::string &command, const CommonOptions &opts,
                 const std::string &raw_input) {
    json report;
    report["command"] = command;
    report["tool_version"] = kVersion;
    report["inputs_digest"] = fnv1a_hex(raw_input);
    report["seed"] = opts.seed;
    report["tolerances"] = {{"eps", opts.eps}};
    return report;
}

int emit(json report, bool pass,
         const std::chrono::steady_clock::time_point &start,
         const CommonOptions &opts, int fail_code = kExitFail) {
    report["pass"] = pass;
    report["runtime_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - start)
            .count();
    const std::string text = report.dump(2) + "\n";
    if (opts.out_path.empty()) {
        std::cout << text;
    } else {
        const std::string tmp_path = opts.out_path + ".tmp";
        {
            std::ofstream out(tmp_path, std::ios::binary);
            if (!out) {
                std::cerr << "cannot write " << tmp_path << "\n";
                return kExitInputError;
            }
            out << text;
        }
        std::error_code ec;
        std::filesystem::rename(tmp_path, opts.out_path, ec);
        if (ec) {
            std::cerr << "cannot move report into place: " << ec.message()
                      << "\n";
            return kExitInputError;
        }
    }
    return pass ? kExitPass : fail_code;
}

int cmd_check(const CommonOptions &opts, int order) {
    const auto start = std::chrono::steady_clock::now();
    const std::string raw = read_file(opts.input_path);
    const OperatorSequence seq = sequence_from_json(parse_input(raw));

    json verdicts;
    const PsdReport hamburger = hamburger_check(seq, order, opts.eps);
    verdicts["hamburger"] = psd_report_to_json(hamburger);
    if (2 * order + 2 <= seq.max_index()) {
        verdicts["hausdorff"] =
            psd_report_to_json(hausdorff_check(seq, order, opts.eps));
    } else {
        verdicts["hausdorff"] = "skipped: not enough moments";
    }
    if (2 * order + 1 <= seq.max_index()) {
        verdicts["stieltjes"] =
            psd_report_to_json(stieltjes_check(seq, order, opts.eps));
    } else {
        verdicts["stieltjes"] = "skipped: not enough moments";
    }
    const Verdict local =
        local_moment_check(seq, make_scheme(opts), order, opts.eps);
    verdicts["local"] = verdict_to_json(local);

    json report = base_report("check", opts, raw);
    report["order"] = order;
    report["verdicts"] = std::move(verdicts);
    // the R-support criteria decide the exit code; the interval tests are
    // informational for the restricted-support problems
    const bool pass = hamburger.is_psd && local.pass;
    return emit(std::move(report), pass, start, opts);
}

int cmd_solve(const CommonOptions &opts, int r_max, double residual_tol) {
    const auto start = std::chrono::steady_clock::now();
    const std::string raw = read_file(opts.input_path);
    const OperatorSequence seq = sequence_from_json(parse_input(raw));

    RecursiveSolution sol =
        solve_recursive(seq, r_max, make_scheme(opts), residual_tol, opts.eps);

    json report = base_report("solve", opts, raw);
    report["tolerances"]["residual_tol"] = residual_tol;
    json verdicts;
    verdicts["order"] = sol.fit.order;
    verdicts["fit_residual"] = sol.fit.residual;
    verdicts["polynomial"] = sol.fit.polynomial.coefficients;
    verdicts["roots"] = sol.roots;
    verdicts["is_moment_sequence"] = verdict_to_json(sol.is_moment_sequence);
    report["verdicts"] = std::move(verdicts);
    report["measure"] = ovm_to_json(sol.charge);
    return emit(std::move(report), sol.is_moment_sequence.pass, start, opts);
}

int cmd_pair(const CommonOptions &opts) {
    const auto start = std::chrono::steady_clock::now();
    const std::string raw = read_file(opts.input_path);
    const OperatorSequence seq = sequence_from_json(parse_input(raw));
    if (seq.max_index() != 1) {
        throw SchemaError("pair: input must contain exactly T_0 and T_1");
    }
    const TwoAtomicResult result = two_atomic(seq.term(0), seq.term(1));
    const Verdict measure_verdict = is_measure(result.measure, opts.eps);

    json report = base_report("pair", opts, raw);
    json verdicts;
    verdicts["alpha"] = result.bounds.alpha;
    verdicts["beta"] = result.bounds.beta;
    verdicts["degenerate_pencil"] = result.degenerate;
    verdicts["moment_residual"] = result.moment_residual;
    verdicts["weights_psd"] = verdict_to_json(measure_verdict);
    report["verdicts"] = std::move(verdicts);
    report["measure"] = ovm_to_json(result.measure);
    const bool pass = measure_verdict.pass && result.moment_residual <= 1e-10;
    return emit(std::move(report), pass, start, opts);
}

int cmd_shift(const CommonOptions &opts, int order, int flat_at) {
    const auto start = std::chrono::steady_clock::now();
    const std::string raw = read_file(opts.input_path);
    const WeightFamily family = weights_from_json(parse_input(raw));

    json verdicts;
    const Verdict sub =
        subnormality_check(family, order, make_scheme(opts), opts.eps);
    verdicts["subnormality"] = verdict_to_json(sub);
    bool pass = sub.pass;
    if (flat_at >= 0) {
        const Verdict prop = propagation_check(family, flat_at);
        verdicts["propagation"] = verdict_to_json(prop);
        const Verdict flat =
            flatness_identity_check(shift_moments(family), flat_at,
                                    family.count() - flat_at - 1);
        verdicts["flatness_identity"] = verdict_to_json(flat);
        pass = pass && prop.pass && flat.pass;
    }

    json report = base_report("shift", opts, raw);
    report["order"] = order;
    report["verdicts"] = std::move(verdicts);
    return emit(std::move(report), pass, start, opts);
}

int cmd_ovm(const CommonOptions &opts, std::optional<int> moment_count,
            bool dilate, bool spectral) {
    const auto start = std::chrono::steady_clock::now();
    const std::string raw = read_file(opts.input_path);
    const AtomicOVM e = ovm_from_json(parse_input(raw));

    json report = base_report("ovm", opts, raw);
    json verdicts;
    bool pass = true;
    if (moment_count) {
        const OperatorSequence mom = moments(e, *moment_count);
        report["moments"] = sequence_to_json(mom);
        verdicts["is_measure"] = verdict_to_json(is_measure(e, opts.eps));
        pass = verdicts["is_measure"]["pass"].get<bool>();
    }
    if (dilate) {
        const DilationData data = naimark_dilate(e, opts.eps);
        json dilation;
        dilation["dilated_atoms"] = data.dilated_atoms;
        dilation["max_relative_residual"] = data.max_relative_residual;
        verdicts["dilation"] = std::move(dilation);
        pass = pass && data.max_relative_residual <= 1e-9;
    }
    if (spectral) {
        const Verdict v = is_spectral(e);
        verdicts["spectral"] = verdict_to_json(v);
        pass = pass && v.pass;
    }
    report["verdicts"] = std::move(verdicts);
    return emit(std::move(report), pass, start, opts);
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"operator moment problem toolkit"};
    app.require_subcommand(1);

    CommonOptions opts;
    int order = 1;
    int r_max = 4;
    double residual_tol = tol::kFitResidual;
    int flat_at = -1;
    std::optional<int> moment_count;
    bool dilate = false;
    bool spectral = false;

    auto add_common = [&](CLI::App *sub, bool with_scheme) {
        sub->add_option("input", opts.input_path, "input JSON file")
            ->required();
        sub->add_option("--out", opts.out_path, "write the report here");
        sub->add_option("--eps", opts.eps, "relative PSD tolerance");
        if (with_scheme) {
            sub->add_option("--scheme", opts.scheme,
                            "sampling scheme: canonical|random");
            sub->add_option("--samples", opts.samples,
                            "random sample count (added to canonical)");
            sub->add_option("--seed", opts.seed, "sampling seed");
        }
    };

    CLI::App *check = app.add_subcommand(
        "check", "Hamburger / Hausdorff / Stieltjes / local positivity");
    add_common(check, true);
    check->add_option("--order", order, "Hankel order")->required();

    CLI::App *solve =
        app.add_subcommand("solve", "recursive moment problem");
    add_common(solve, true);
    solve->add_option("--rmax", r_max, "largest recurrence order tried");
    solve->add_option("--tol", residual_tol, "recurrence residual tolerance");

    CLI::App *pair =
        app.add_subcommand("pair", "two-atom measure for (T_0, T_1)");
    add_common(pair, false);

    CLI::App *shift =
        app.add_subcommand("shift", "weighted-shift subnormality");
    add_common(shift, true);
    shift->add_option("--order", order, "subnormality order")->required();
    shift->add_option("--flat-at", flat_at,
                      "also run propagation checks at this flat index");

    CLI::App *ovm = app.add_subcommand("ovm", "atomic OVM operations");
    add_common(ovm, false);
    ovm->add_option("--moments", moment_count, "emit the first N+1 moments");
    ovm->add_flag("--dilate", dilate, "build the Naimark dilation");
    ovm->add_flag("--spectral", spectral, "test spectrality");

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) {
            return cmd_check(opts, order);
        }
        if (solve->parsed()) {
            return cmd_solve(opts, r_max, residual_tol);
        }
        if (pair->parsed()) {
            return cmd_pair(opts);
        }
        if (shift->parsed()) {
            return cmd_shift(opts, order, flat_at);
        }
        if (ovm->parsed()) {
            if (!moment_count && !dilate && !spectral) {
                std::cerr << "ovm: pick --moments, --dilate or --spectral\n";
                return kExitInputError;
            }
            return cmd_ovm(opts, moment_count, dilate, spectral);
        }
    } catch (const NoRecurrenceError &e) {
        std::cerr << e.what() << "\n";
        return kExitNotFound;
    } catch (const ReconstructionMismatchError &e) {
        std::cerr << e.what() << "\n";
        return kExitNotFound;
    } catch (const SchemaError &e) {
        std::cerr << e.what() << "\n";
        return kExitInputError;
    } catch (const NotSemiSpectralError &e) {
        std::cerr << e.what() << "\n";
        return kExitFail;
    } catch (const NotMeasureError &e) {
        std::cerr << e.what() << "\n";
        return kExitFail;
    } catch (const SingularOperatorError &e) {
        std::cerr << e.what() << "\n";
        return kExitInputError;
    } catch (const InsufficientMomentsError &e) {
        std::cerr << e.what() << "\n";
        return kExitInputError;
    } catch (const Error &e) {
        std::cerr << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
