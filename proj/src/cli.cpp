// SPDX-License-Identifier: MIT
#include "brank/cli.hpp"

#include "brank/certify.hpp"
#include "brank/completion.hpp"
#include "brank/ideal_probe.hpp"
#include "brank/io.hpp"
#include "brank/parallel.hpp"
#include "brank/phylo.hpp"
#include "brank/version.hpp"

#include <CLI11.hpp>

#include <functional>
#include <ostream>
#include <sstream>

namespace brank {

namespace {

struct Globals {
    std::uint64_t seed = 0;
    std::string field = "rational";
    std::string format = "json";
    bool quiet = false;
    std::size_t threads = 0;
};

struct Outcome {
    int code = exit_code::ok;
    Json report;
    std::string text;
};

Shape parse_dims(const std::string& text) {
    Shape dims;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const long v = std::stol(item, &used);
            if (used != item.size() || v <= 0) throw std::invalid_argument(item);
            dims.push_back(static_cast<std::size_t>(v));
        } catch (const std::exception&) {
            throw CLI::ValidationError("--dims", "expected positive integers separated by commas, got '" + text + "'");
        }
    }
    if (dims.empty()) throw CLI::ValidationError("--dims", "no dimensions given");
    return dims;
}

/// 1-based comma-separated positions to 0-based modes.
std::vector<std::size_t> parse_positions(const std::string& text, std::size_t p) {
    std::vector<std::size_t> modes;
    for (std::size_t d : parse_dims(text)) {
        if (d > p) throw DataError("position " + std::to_string(d) + " exceeds the tensor order " + std::to_string(p));
        modes.push_back(d - 1);
    }
    std::sort(modes.begin(), modes.end());
    return modes;
}

int cert_exit(Verdict v, bool passed, bool strict) {
    if (v == Verdict::violated) return exit_code::violated;
    if (v == Verdict::certified) return exit_code::ok;
    return passed && !strict ? exit_code::ok : exit_code::inconclusive;
}

unsigned infer_alphabet(unsigned given, std::initializer_list<const std::string*> words) {
    if (given != 0) return given;
    unsigned n = 2;
    for (const auto* w : words)
        for (char c : *w)
            if (c >= '0' && c <= '9') n = std::max(n, static_cast<unsigned>(c - '0') + 1);
    return n;
}

std::string text_report(const CertReport& r) {
    std::ostringstream s;
    s << "verdict: " << verdict_name(r.verdict);
    if (r.verdict == Verdict::inconclusive && r.passed) s << " (pass)";
    s << "\nk: " << r.k << '\n';
    if (r.contraction) {
        s << "contracted positions:";
        for (std::size_t m : r.contraction->modes) s << ' ' << m + 1;
        s << " (subset " << r.contraction->subset_index << ", trial " << r.contraction->trial << ")\n";
    }
    if (r.minor) {
        s << "nonzero minor rows:";
        for (const auto& w : r.minor->spec.rows) s << ' ' << w.to_digits();
        s << "\n              cols:";
        for (const auto& w : r.minor->spec.cols) s << ' ' << w.to_digits();
        s << "\nvalue: " << to_string(r.minor->value) << '\n';
    }
    if (r.strassen_value) s << "strassen value: " << to_string(*r.strassen_value) << '\n';
    if (r.stats.randomized)
        s << "tasks: " << r.stats.tasks_evaluated << " of " << r.stats.subsets * r.stats.trials_per_subset << " (p0 "
          << r.stats.p0 << ")\n";
    return s.str();
}

QTensor load_tensor(const std::string& path) { return qtensor_from_json(read_json_file(path)); }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Border-rank tests and tools for tensors of arbitrary order.", "brank"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--seed", g.seed, "Seed for all random streams")->capture_default_str();
    app.add_option("--field", g.field, "Scalar field")->check(CLI::IsMember({"rational", "float64"}))->capture_default_str();
    app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
    app.add_flag("--quiet", g.quiet, "Print nothing; report through the exit code only");
    app.add_option("--threads", g.threads, "Worker threads (default: $BRANK_THREADS or all cores)");

    std::function<Outcome()> action;

    // gen
    auto* gen = app.add_subcommand("gen", "Random tensor that is a sum of r pure tensors with integer factors");
    std::string gen_dims, gen_out;
    std::size_t gen_rank = 1;
    long gen_bound = 10;
    bool gen_sparse = false;
    gen->add_option("--dims", gen_dims, "Mode sizes, e.g. 3,3,3")->required();
    gen->add_option("--rank", gen_rank, "Number of pure terms")->required();
    gen->add_option("--bound", gen_bound, "Factor entries are uniform in [-bound, bound]")->capture_default_str();
    gen->add_option("-o,--output", gen_out, "Write the tensor here instead of standard output");
    gen->add_flag("--sparse", gen_sparse, "Store only nonzero entries");
    gen->callback([&] {
        action = [&] {
            const Shape dims = parse_dims(gen_dims);
            auto [t, f] = random_rank(dims, gen_rank, g.seed, gen_bound);
            Json config{{"command", "gen"}, {"dims", dims}, {"rank", gen_rank}, {"bound", gen_bound}, {"seed", g.seed},
                        {"field", g.field}};
            Json tj = g.field == "float64" ? to_json(to_float(t)) : to_json(t, gen_sparse);
            tj["config"] = config;
            Outcome o;
            if (gen_out.empty()) {
                o.report = std::move(tj);
                o.text = o.report.dump(2) + "\n";
                return o;
            }
            write_json_file(gen_out, tj);
            config["output"] = gen_out;
            o.report = {{"config", config}};
            o.text = "wrote " + gen_out + "\n";
            return o;
        };
    });

    // certify
    auto* cert = app.add_subcommand(
        "certify",
        "Test border rank <= k. Exact for k <= 2 (vanishing of all (k+1)x(k+1) flattening minors); for larger k a "
        "nonzero flattening minor or Strassen invariant is a certificate of violation and passing is inconclusive. "
        "Tensors with more than p0 modes are first contracted along random pure tensors for every choice of p - p0 "
        "modes.");
    std::string cert_file;
    std::size_t cert_k = 1, cert_trials = 5;
    std::optional<std::size_t> cert_p0;
    long cert_bound = 10;
    double cert_threshold = 1e-9;
    bool cert_strict = false;
    cert->add_option("FILE", cert_file, "Tensor JSON")->required();
    cert->add_option("--k", cert_k, "Border-rank bound to test")->required();
    cert->add_option("--p0", cert_p0, "Contract down to this many modes (default 2(k+1) floor(log2(k+1)), at least 3)");
    cert->add_option("--trials", cert_trials, "Random contractions per subset of modes")->check(CLI::PositiveNumber)->capture_default_str();
    cert->add_option("--bound", cert_bound, "Covector entries are uniform in [-bound, bound]")->capture_default_str();
    cert->add_option("--threshold", cert_threshold, "Relative singular-value threshold for float64 data")->capture_default_str();
    cert->add_flag("--strict", cert_strict, "Exit 2 instead of 0 when the result is only an inconclusive pass");
    cert->callback([&] {
        action = [&] {
            const Json tj = read_json_file(cert_file);
            Outcome o;
            Json config{{"command", "certify"}, {"input", cert_file}, {"k", cert_k}, {"seed", g.seed}, {"field", g.field}};
            CertReport r;
            if (g.field == "float64") {
                config["threshold"] = cert_threshold;
                r = numerical_flattening_test(ftensor_from_json(tj), cert_k, cert_threshold);
            } else {
                TestConfig c;
                c.k = cert_k;
                c.p0 = cert_p0.value_or(default_p0(cert_k));
                c.trials = cert_trials;
                c.seed = g.seed;
                c.coeff_bound = cert_bound;
                c.threads = resolve_threads(g.threads ? std::optional(g.threads) : std::nullopt);
                config["p0"] = *c.p0;
                config["trials"] = c.trials;
                config["bound"] = c.coeff_bound;
                r = random_contraction_test(qtensor_from_json(tj), c);
            }
            o.report = {{"config", config}, {"report", to_json(r)}};
            o.text = text_report(r);
            o.code = cert_exit(r.verdict, r.passed, cert_strict);
            return o;
        };
    });

    // flatten
    auto* flat = app.add_subcommand("flatten",
                                    "Flattening of a tensor to a matrix by a bipartition of its modes, with its rank; "
                                    "without --rows, the ranks of all bipartitions and their maximum (a lower bound on "
                                    "border rank)");
    std::string flat_file, flat_rows;
    double flat_tol = 1e-9;
    flat->add_option("FILE", flat_file, "Tensor JSON")->required();
    flat->add_option("--rows", flat_rows, "Row positions, 1-based, e.g. 1,3");
    flat->add_option("--tol", flat_tol, "Relative singular-value tolerance for float64 data")->capture_default_str();
    flat->callback([&] {
        action = [&] {
            const Json tj = read_json_file(flat_file);
            const bool flt = g.field == "float64";
            Json config{{"command", "flatten"}, {"input", flat_file}, {"field", g.field}};
            Outcome o;
            std::ostringstream text;
            if (!flat_rows.empty()) {
                config["rows"] = flat_rows;
                Json rep;
                if (flt) {
                    const FTensor t = ftensor_from_json(tj);
                    const auto modes = parse_positions(flat_rows, t.order());
                    const FMatrix m = flatten_matrix(t, modes);
                    rep["rank"] = numerical_rank(m, flat_tol);
                    Json rows = Json::array();
                    for (std::size_t i = 0; i < m.rows(); ++i) {
                        std::vector<double> r(m.cols());
                        for (std::size_t j = 0; j < m.cols(); ++j) r[j] = m(i, j);
                        rows.push_back(r);
                    }
                    rep["matrix"] = rows;
                } else {
                    const QTensor t = qtensor_from_json(tj);
                    const auto modes = parse_positions(flat_rows, t.order());
                    const QMatrix m = flatten_matrix(t, modes);
                    rep["rank"] = rank(m);
                    Json rows = Json::array();
                    for (std::size_t i = 0; i < m.rows(); ++i) {
                        Json r = Json::array();
                        for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(to_string(m(i, j)));
                        text << r.dump() << '\n';
                        rows.push_back(std::move(r));
                    }
                    rep["matrix"] = rows;
                }
                text << "rank: " << rep["rank"].get<std::size_t>() << '\n';
                o.report = {{"config", config}, {"flattening", rep}};
            } else {
                Json parts = Json::array();
                std::size_t best = 0;
                auto add = [&](const std::vector<std::size_t>& rows, std::size_t r) {
                    std::vector<std::size_t> pos;
                    for (std::size_t m : rows) pos.push_back(m + 1);
                    parts.push_back({{"rows", pos}, {"rank", r}});
                    best = std::max(best, r);
                    text << "rows";
                    for (std::size_t x : pos) text << ' ' << x;
                    text << ": rank " << r << '\n';
                };
                if (flt) {
                    const FTensor t = ftensor_from_json(tj);
                    if (t.order() < 2) throw DataError("flatten needs at least two modes");
                    for (const auto& rows : bipartitions(t.order())) add(rows, numerical_rank(flatten_matrix(t, rows), flat_tol));
                } else {
                    const QTensor t = qtensor_from_json(tj);
                    if (t.order() < 2) throw DataError("flatten needs at least two modes");
                    for (const auto& rows : bipartitions(t.order())) add(rows, rank(flatten_matrix(t, rows)));
                }
                text << "lower bound: " << best << '\n';
                o.report = {{"config", config}, {"bipartitions", parts}, {"lower_bound", best}};
            }
            o.text = text.str();
            return o;
        };
    });

    // probe
    auto* probe = app.add_subcommand(
        "probe",
        "Dimension of the degree-d part of the ideal of tensors of rank <= k, as the nullity of the matrix of all "
        "degree-d monomials evaluated at random rank-<=k integer tensors");
    std::string probe_dims, probe_modulus = "auto", probe_kernel_out;
    std::size_t probe_k = 1, probe_d = 2;
    double probe_oversample = 1.5;
    probe->add_option("--dims", probe_dims, "Mode sizes, e.g. 2,2,2")->required();
    probe->add_option("--k", probe_k, "Rank of the samples")->required();
    probe->add_option("--degree", probe_d, "Monomial degree")->required()->check(CLI::PositiveNumber);
    probe->add_option("--modulus", probe_modulus, "auto (two random primes), 0 (exact rationals), or a prime")->capture_default_str();
    probe->add_option("--oversample", probe_oversample, "Samples per monomial, at least 1.2")->capture_default_str();
    probe->add_option("--kernel-out", probe_kernel_out, "Write a basis of the kernel polynomials here (exact runs only)");
    probe->callback([&] {
        action = [&] {
            ProbeConfig c;
            c.dims = parse_dims(probe_dims);
            c.k = probe_k;
            c.d = probe_d;
            c.oversample = probe_oversample;
            c.seed = g.seed;
            c.want_kernel = !probe_kernel_out.empty();
            c.threads = resolve_threads(g.threads ? std::optional(g.threads) : std::nullopt);
            if (probe_modulus != "auto") {
                try {
                    std::size_t used = 0;
                    c.modulus = std::stoull(probe_modulus, &used);
                    if (used != probe_modulus.size()) throw std::invalid_argument(probe_modulus);
                } catch (const std::exception&) {
                    throw CLI::ValidationError("--modulus", "expected auto, 0 or a prime, got '" + probe_modulus + "'");
                }
                if (*c.modulus != 0 && !is_prime(*c.modulus)) throw CLI::ValidationError("--modulus", probe_modulus + " is not prime");
            }
            const ProbeResult r = ideal_degree_dim(c);
            Json config{{"command", "probe"}, {"dims", c.dims}, {"k", c.k}, {"degree", c.d}, {"modulus", probe_modulus},
                        {"oversample", c.oversample}, {"seed", g.seed}};
            Outcome o;
            o.report = {{"config", config}, {"result", to_json(r)}};
            if (c.want_kernel) {
                if (!r.exact) throw DataError("kernel polynomials are only available from exact runs");
                Json polys = Json::array();
                for (const auto& f : r.kernel) polys.push_back(to_json(f));
                write_json_file(probe_kernel_out, polys);
                o.report["kernel_out"] = probe_kernel_out;
            }
            std::ostringstream text;
            text << "monomials: " << r.monomials << "\nsamples: " << r.samples << "\nnullity: " << r.nullity
                 << (r.exact ? " (exact)" : " (mod p)") << '\n';
            o.text = text.str();
            return o;
        };
    });

    // complete
    auto* comp = app.add_subcommand("complete", "Completion of a tensor from its boundary entries through a pivot minor");
    comp->require_subcommand(1);
    auto* comp_extract = comp->add_subcommand("extract", "Entries with at most one position beyond p, as boundary data");
    auto* comp_fill = comp->add_subcommand(
        "fill",
        "Fill every entry by forcing each (k+1)x(k+1) minor that extends the pivot to vanish, level by level in the "
        "number of positions beyond p");
    auto* comp_validate = comp->add_subcommand("validate", "Check that every slab agrees with the core on words in [p]");
    auto* comp_formula = comp->add_subcommand("formula", "Symbolic completion formula of one entry");
    std::string comp_tensor, comp_boundary, comp_pivot, comp_out, comp_word;
    std::size_t comp_p = 1, comp_k = 1;
    unsigned comp_n = 0;
    comp_extract->add_option("FILE", comp_tensor, "Tensor JSON")->required();
    comp_extract->add_option("--p", comp_p, "Prefix length")->required();
    comp_extract->add_option("-o,--output", comp_out, "Write the boundary here");
    comp_fill->add_option("--boundary", comp_boundary, "Boundary JSON")->required();
    comp_fill->add_option("--pivot", comp_pivot, "Pivot JSON")->required();
    comp_fill->add_option("--k", comp_k, "Pivot size")->required();
    comp_fill->add_option("-o,--output", comp_out, "Write the tensor here");
    comp_validate->add_option("--boundary", comp_boundary, "Boundary JSON")->required();
    comp_formula->add_option("--pivot", comp_pivot, "Pivot JSON")->required();
    comp_formula->add_option("--word", comp_word, "Entry to complete, as a digit string")->required();
    comp_formula->add_option("--n", comp_n, "Alphabet size (default: from the digits)");
    comp_extract->callback([&] {
        action = [&] {
            const BoundaryData b = extract_boundary(load_tensor(comp_tensor), comp_p);
            Json config{{"command", "complete extract"}, {"input", comp_tensor}, {"p", comp_p}};
            Outcome o;
            if (comp_out.empty()) o.report = to_json(b);
            else {
                write_json_file(comp_out, to_json(b));
                config["output"] = comp_out;
                o.report = {{"config", config}};
            }
            o.text = comp_out.empty() ? o.report.dump(2) + "\n" : "wrote " + comp_out + "\n";
            return o;
        };
    });
    comp_fill->callback([&] {
        action = [&] {
            const BoundaryData b = boundary_from_json(read_json_file(comp_boundary));
            const Pivot pv = pivot_from_json(read_json_file(comp_pivot), static_cast<unsigned>(std::max<std::size_t>(2, b.n)));
            Json config{{"command", "complete fill"}, {"boundary", comp_boundary}, {"pivot", comp_pivot}, {"k", comp_k}};
            Outcome o;
            QTensor t;
            try {
                t = complete_tensor(b, pv, comp_k);
            } catch (const ZeroPivotError& e) {
                throw DataError(e.what());
            } catch (const std::invalid_argument& e) {
                throw DataError(e.what());
            }
            Json tj = to_json(t);
            if (comp_out.empty()) {
                tj["config"] = config;
                o.report = std::move(tj);
                o.text = o.report.dump(2) + "\n";
            } else {
                write_json_file(comp_out, tj);
                config["output"] = comp_out;
                o.report = {{"config", config}};
                o.text = "wrote " + comp_out + "\n";
            }
            return o;
        };
    });
    comp_validate->callback([&] {
        action = [&] {
            const BoundaryData b = boundary_from_json(read_json_file(comp_boundary));
            const auto v = validate_boundary(b);
            Json list = Json::array();
            std::ostringstream text;
            for (const auto& x : v) {
                list.push_back({{"word", to_json(x.word)}, {"positions", x.positions}});
                text << "x_" << x.word.to_digits() << " differs at position";
                for (std::size_t p : x.positions) text << ' ' << p;
                text << '\n';
            }
            if (v.empty()) text << "compatible\n";
            Outcome o;
            o.report = {{"config", {{"command", "complete validate"}, {"boundary", comp_boundary}}},
                        {"compatible", v.empty()},
                        {"violations", list}};
            o.text = text.str();
            o.code = v.empty() ? exit_code::ok : exit_code::violated;
            return o;
        };
    });
    comp_formula->callback([&] {
        action = [&] {
            const unsigned n = infer_alphabet(comp_n, {&comp_word});
            const Pivot pv = pivot_from_json(read_json_file(comp_pivot), n);
            const Word w = parse_word(comp_word, n);
            CompletionFormula f;
            try {
                f = completion_formula(pv, w);
            } catch (const std::invalid_argument& e) {
                throw DataError(e.what());
            }
            Outcome o;
            o.report = {{"config", {{"command", "complete formula"}, {"pivot", comp_pivot}, {"word", comp_word}, {"n", n}}},
                        {"numerator", to_json(f.numerator)},
                        {"denominator", to_json(f.denominator)}};
            o.text = "x_" + w.to_digits() + " = (" + f.numerator.to_string() + ") / (" + f.denominator.to_string() + ")\n";
            return o;
        };
    });

    // orbit
    auto* orbit = app.add_subcommand("orbit", "Word embeddings and substitution-monoid actions on words");
    orbit->require_subcommand(1);
    auto* o_witness = orbit->add_subcommand(
        "witness", "Find sigma with increasing maxima such that sigma acting on wa gives wb, or report that none exists");
    auto* o_act = orbit->add_subcommand("act", "Apply a substitution element to a word");
    auto* o_embed = orbit->add_subcommand("embed", "Leftmost increasing embedding of wa into wb");
    auto* o_canon = orbit->add_subcommand("canonical",
                                          "Canonical k-tuples of words from which every k x k minor is reached by one substitution");
    std::string o_wa, o_wb, o_sigma, o_word;
    unsigned o_n = 0;
    std::size_t o_k = 1;
    for (auto* sc : {o_witness, o_embed}) {
        sc->add_option("--wa", o_wa, "Source word (digit string)")->required();
        sc->add_option("--wb", o_wb, "Target word (digit string)")->required();
        sc->add_option("--n", o_n, "Alphabet size (default: from the digits)");
    }
    o_act->add_option("--sigma", o_sigma, "Substitution element, e.g. ({1},{2,3}) or [[1],[2,3]]")->required();
    o_act->add_option("--word", o_word, "Word (digit string)")->required();
    o_act->add_option("--n", o_n, "Alphabet size (default: from the digits)");
    o_canon->add_option("--k", o_k, "Minor size")->required();
    o_canon->add_option("--n", o_n, "Alphabet size")->required();
    o_witness->callback([&] {
        action = [&] {
            const unsigned n = infer_alphabet(o_n, {&o_wa, &o_wb});
            const Word a = parse_word(o_wa, n), b = parse_word(o_wb, n);
            const auto sigma = subs_witness(a, b);
            Outcome o;
            Json rep{{"config", {{"command", "orbit witness"}, {"wa", o_wa}, {"wb", o_wb}, {"n", n}}}};
            if (!sigma) {
                rep["exists"] = false;
                o.text = "no witness\n";
                o.code = exit_code::violated;
            } else {
                const bool valid = sigma->is_increasing() && subs_act(*sigma, a) == b;
                rep["exists"] = true;
                rep["sigma"] = to_json(*sigma);
                rep["text"] = sigma->to_string();
                rep["valid"] = valid;
                o.text = sigma->to_string() + (valid ? "\n" : " (INVALID)\n");
            }
            o.report = std::move(rep);
            return o;
        };
    });
    o_embed->callback([&] {
        action = [&] {
            const unsigned n = infer_alphabet(o_n, {&o_wa, &o_wb});
            const auto pi = higman_embed(parse_word(o_wa, n), parse_word(o_wb, n));
            Outcome o;
            o.report = {{"config", {{"command", "orbit embed"}, {"wa", o_wa}, {"wb", o_wb}, {"n", n}}}, {"exists", pi.has_value()}};
            if (pi) {
                o.report["pi"] = to_json(*pi);
                std::ostringstream s;
                s << '(';
                for (std::size_t i = 0; i < pi->size(); ++i) s << (i ? "," : "") << pi->values()[i];
                s << ")\n";
                o.text = s.str();
            } else {
                o.text = "no embedding\n";
                o.code = exit_code::violated;
            }
            return o;
        };
    });
    o_act->callback([&] {
        action = [&] {
            const unsigned n = infer_alphabet(o_n, {&o_word});
            const SubsElement s = parse_subs(o_sigma);
            Word w;
            try {
                w = subs_act(s, parse_word(o_word, n));
            } catch (const std::invalid_argument& e) {
                throw DataError(e.what());
            }
            Outcome o;
            o.report = {{"config", {{"command", "orbit act"}, {"sigma", s.to_string()}, {"word", o_word}, {"n", n}}},
                        {"result", to_json(w)}};
            o.text = w.to_digits() + "\n";
            return o;
        };
    });
    o_canon->callback([&] {
        action = [&] {
            if (o_n < 2) throw CLI::ValidationError("--n", "alphabet needs at least two symbols");
            const MinorWords mw = canonical_minor_words(o_k, o_n);
            Json rows = Json::array(), cols = Json::array();
            for (const auto& w : mw.rows) rows.push_back(to_json(w));
            for (const auto& w : mw.cols) cols.push_back(to_json(w));
            Outcome o;
            o.report = {{"config", {{"command", "orbit canonical"}, {"k", o_k}, {"n", o_n}}}, {"rows", rows}, {"cols", cols}};
            std::ostringstream s;
            s << "rows:";
            for (const auto& w : mw.rows) s << ' ' << w.to_digits();
            s << "\ncols:";
            for (const auto& w : mw.cols) s << ' ' << w.to_digits();
            s << '\n';
            o.text = s.str();
            return o;
        };
    });

    // phylo
    auto* phylo = app.add_subcommand("phylo", "General Markov model on trees");
    phylo->require_subcommand(1);
    auto* p_check = phylo->add_subcommand(
        "check",
        "Membership in the k-state general Markov model: rank <= k for every internal-edge flattening and border rank "
        "<= k for the star tensor at every internal vertex");
    auto* p_sim = phylo->add_subcommand("simulate", "Joint leaf distribution of the model with random parameters");
    std::string p_tree, p_tensor, p_out;
    std::size_t p_k = 2;
    std::optional<std::size_t> p_states;
    bool p_stochastic = false, p_strict = false;
    for (auto* sc : {p_check, p_sim}) {
        sc->add_option("--tree", p_tree, "Newick file")->required();
        sc->add_option("--k", p_k, "Number of hidden states")->required()->check(CLI::PositiveNumber);
    }
    p_check->add_option("TENSOR", p_tensor, "Tensor JSON, one mode per leaf in left-to-right order")->required();
    p_check->add_flag("--strict", p_strict, "Exit 2 instead of 0 when the result is only an inconclusive pass");
    p_sim->add_flag("--stochastic", p_stochastic, "Probability root vector and row-stochastic edge matrices");
    p_sim->add_option("--states", p_states, "Observed states per leaf (default k)");
    p_sim->add_option("-o,--output", p_out, "Write the tensor here");
    p_check->callback([&] {
        action = [&] {
            const Tree tree = parse_newick(read_text_file(p_tree));
            const PhyloReport r = check_membership(load_tensor(p_tensor), tree, p_k);
            Outcome o;
            o.report = {{"config", {{"command", "phylo check"}, {"tree", tree.to_newick()}, {"input", p_tensor}, {"k", p_k}}},
                        {"report", to_json(r)}};
            std::ostringstream s;
            s << "verdict: " << verdict_name(r.verdict) << (r.verdict == Verdict::inconclusive && r.passed ? " (pass)" : "") << '\n';
            for (const auto& e : r.edges) s << "edge to node " << e.node << ": rank " << e.rank << (e.violation ? " VIOLATED" : "") << '\n';
            for (const auto& st : r.stars) s << "star at node " << st.node << ": " << verdict_name(st.report.verdict) << '\n';
            o.text = s.str();
            o.code = cert_exit(r.verdict, r.passed, p_strict);
            return o;
        };
    });
    p_sim->callback([&] {
        action = [&] {
            const Tree tree = parse_newick(read_text_file(p_tree));
            std::vector<std::size_t> states;
            if (p_states) states.assign(tree.leaf_count(), *p_states);
            const QTensor t = model_tensor(tree, random_params(tree, p_k, g.seed, p_stochastic, states));
            Json config{{"command", "phylo simulate"}, {"tree", tree.to_newick()}, {"k", p_k}, {"stochastic", p_stochastic},
                        {"seed", g.seed}};
            if (p_states) config["states"] = *p_states;
            Json tj = to_json(t);
            tj["config"] = config;
            Outcome o;
            if (p_out.empty()) {
                o.report = std::move(tj);
                o.text = o.report.dump(2) + "\n";
            } else {
                write_json_file(p_out, tj);
                config["output"] = p_out;
                o.report = {{"config", config}};
                o.text = "wrote " + p_out + "\n";
            }
            return o;
        };
    });

    std::vector<std::string> argv_store{"brank"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_code::ok : exit_code::usage;
    }

    try {
        Outcome o = action();
        if (!g.quiet) {
            if (g.format == "json") out << o.report.dump(2) << '\n';
            else out << o.text;
        }
        return o.code;
    } catch (const CLI::Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::usage;
    } catch (const DataError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::data;
    } catch (const nlohmann::json::exception& e) {
        err << "error: malformed JSON: " << e.what() << '\n';
        return exit_code::data;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::data;
    } catch (const std::length_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::data;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return exit_code::internal;
    }
}

}  // namespace brank
