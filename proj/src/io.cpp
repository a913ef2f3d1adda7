// SPDX-License-Identifier: MIT
#include "brank/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace brank {

namespace {

Rational rational_from_json(const Json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(Integer(j.dump()));
    throw DataError("expected a rational as a string or integer, got " + j.dump());
}

double double_from_json(const Json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return to_double(parse_rational(j.get<std::string>()));
    throw DataError("expected a number, got " + j.dump());
}

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw DataError(std::string("missing field '") + key + "'");
    return j.at(key);
}

std::size_t size_from_json(const Json& j) {
    if (!j.is_number_unsigned()) throw DataError("expected a nonnegative integer, got " + j.dump());
    return j.get<std::size_t>();
}

Shape dims_from_json(const Json& j) {
    if (!j.is_array()) throw DataError("dims must be an array");
    Shape dims;
    for (const auto& d : j) {
        dims.push_back(size_from_json(d));
        if (dims.back() == 0) throw DataError("dims must be positive");
    }
    return dims;
}

template <class T, class Convert>
BasicTensor<T> tensor_from_json(const Json& j, Convert convert) {
    const Shape dims = dims_from_json(field(j, "dims"));
    const Json& entries = field(j, "entries");
    if (!entries.is_array()) throw DataError("entries must be an array");
    BasicTensor<T> t(dims);
    if (j.value("format", std::string("dense")) == "sparse") {
        for (const auto& e : entries) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_array()) throw DataError("sparse entries are [[index...], value]");
            std::vector<std::size_t> idx;
            for (const auto& i : e[0]) idx.push_back(size_from_json(i));
            if (idx.size() != dims.size()) throw DataError("sparse entry index has the wrong length");
            for (std::size_t m = 0; m < idx.size(); ++m)
                if (idx[m] >= dims[m]) throw DataError("sparse entry index out of range");
            t.at(idx) = convert(e[1]);
        }
        return t;
    }
    if (entries.size() != t.size())
        throw DataError("tensor has " + std::to_string(entries.size()) + " entries, dims require " + std::to_string(t.size()));
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = convert(entries[i]);
    return t;
}

std::size_t slab_position(const Word& w, std::size_t p) {
    std::size_t pos = 0;
    for (const auto& e : w.entries())
        if (e.first > p) {
            if (pos != 0) throw DataError("boundary word x_" + w.to_digits() + " has two positions beyond p");
            pos = e.first;
        }
    return pos;
}

}  // namespace

Json to_json(const QTensor& t, bool sparse) {
    Json j;
    j["dims"] = t.dims();
    j["field"] = "rational";
    Json entries = Json::array();
    if (sparse) {
        j["format"] = "sparse";
        for (std::size_t i = 0; i < t.size(); ++i)
            if (sgn(t[i]) != 0) entries.push_back(Json::array({t.multi_index(i), to_string(t[i])}));
    } else {
        for (const auto& x : t.entries()) entries.push_back(to_string(x));
    }
    j["entries"] = std::move(entries);
    return j;
}

Json to_json(const FTensor& t) {
    Json j;
    j["dims"] = t.dims();
    j["field"] = "float64";
    j["entries"] = std::vector<double>(t.entries().begin(), t.entries().end());
    return j;
}

QTensor qtensor_from_json(const Json& j) {
    if (j.value("field", std::string("rational")) == "float64")
        return tensor_from_json<Rational>(j, [](const Json& x) { return Rational(double_from_json(x)); });
    return tensor_from_json<Rational>(j, rational_from_json);
}

FTensor ftensor_from_json(const Json& j) { return tensor_from_json<double>(j, double_from_json); }

Json to_json(const Word& w) {
    if (w.alphabet() <= 10) return w.to_digits();
    Json out = Json::array();
    for (const auto& [pos, sym] : w.entries()) out.push_back({pos, sym});
    return out;
}

Word parse_word(std::string_view digits, unsigned alphabet) {
    if (alphabet > 10) throw DataError("digit-string words need an alphabet of at most 10 symbols");
    return Word::from_digits(digits, alphabet);
}

Word word_from_json(const Json& j, unsigned alphabet) {
    if (j.is_string()) return parse_word(j.get<std::string>(), alphabet);
    if (!j.is_array()) throw DataError("a word is a digit string or a list of [position, symbol] pairs");
    std::vector<Word::Entry> entries;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2) throw DataError("word entries are [position, symbol] pairs");
        const std::size_t pos = size_from_json(e[0]), sym = size_from_json(e[1]);
        if (pos == 0 || sym == 0 || sym >= alphabet) throw DataError("bad word entry " + e.dump());
        entries.emplace_back(pos, static_cast<unsigned>(sym));
    }
    std::sort(entries.begin(), entries.end());
    try {
        return Word(alphabet, std::move(entries));
    } catch (const std::invalid_argument& e) {
        throw DataError(e.what());
    }
}

Json to_json(const SubsElement& s) {
    Json out = Json::array();
    for (const auto& set : s.sets()) out.push_back(set);
    return out;
}

SubsElement subs_from_json(const Json& j) {
    if (!j.is_array()) throw DataError("a substitution element is a list of position lists");
    std::vector<SubsElement::Set> sets;
    for (const auto& s : j) {
        if (!s.is_array()) throw DataError("a substitution element is a list of position lists");
        SubsElement::Set set;
        for (const auto& x : s) set.push_back(size_from_json(x));
        sets.push_back(std::move(set));
    }
    try {
        return SubsElement(std::move(sets));
    } catch (const std::invalid_argument& e) {
        throw DataError(e.what());
    }
}

SubsElement parse_subs(std::string_view text) {
    std::string s(text);
    const auto first = s.find_first_not_of(" \t");
    if (first != std::string::npos && s[first] == '(') {
        // Set notation: swap to JSON brackets.
        for (char& c : s) {
            if (c == '(' || c == '{') c = '[';
            else if (c == ')' || c == '}') c = ']';
        }
    }
    try {
        return subs_from_json(Json::parse(s));
    } catch (const Json::exception& e) {
        throw DataError("malformed substitution element '" + std::string(text) + "'");
    }
}

Json to_json(const IncMap& pi) { return pi.values(); }

Json to_json(const SparsePoly& f) {
    Json j;
    j["alphabet"] = f.alphabet();
    Json terms = Json::array();
    // Leading term first, as in the text form.
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
        Json mono = Json::array();
        for (const auto& [w, e] : it->first.factors()) mono.push_back(Json::array({to_json(w), e}));
        terms.push_back({{"coef", to_string(it->second)}, {"monomial", std::move(mono)}});
    }
    j["terms"] = std::move(terms);
    j["text"] = f.to_string();
    return j;
}

SparsePoly poly_from_json(const Json& j) {
    const auto n = static_cast<unsigned>(size_from_json(field(j, "alphabet")));
    SparsePoly f(n);
    for (const auto& t : field(j, "terms")) {
        std::vector<Monomial::Factor> factors;
        for (const auto& fe : field(t, "monomial")) {
            if (!fe.is_array() || fe.size() != 2) throw DataError("monomial factors are [word, exponent]");
            factors.emplace_back(word_from_json(fe[0], n), static_cast<unsigned>(size_from_json(fe[1])));
        }
        f.add_term(Monomial(std::move(factors)), rational_from_json(field(t, "coef")));
    }
    return f;
}

Json to_json(const MinorSpec& s) {
    Json j;
    j["rows"] = Json::array();
    j["cols"] = Json::array();
    for (const auto& w : s.rows) j["rows"].push_back(to_json(w));
    for (const auto& w : s.cols) j["cols"].push_back(to_json(w));
    return j;
}

Json to_json(const MinorEvidence& e) {
    Json j;
    std::vector<std::size_t> rows;
    for (std::size_t m : e.row_modes) rows.push_back(m + 1);
    j["row_positions"] = rows;
    j["minor"] = to_json(e.spec);
    j["value"] = to_string(e.value);
    return j;
}

Json to_json(const CertReport& r) {
    Json j;
    j["verdict"] = std::string(verdict_name(r.verdict));
    j["pass"] = r.passed;
    j["k"] = r.k;
    j["numerical"] = r.numerical;
    if (!r.check.empty()) j["check"] = r.check;
    if (r.minor) {
        j["witness"] = to_json(*r.minor);
        if (r.numerical) j["witness"]["smallest_singular_value"] = r.minor->magnitude;
    }
    if (r.strassen_value) j["strassen_value"] = to_string(*r.strassen_value);
    if (r.contraction) {
        const auto& c = *r.contraction;
        Json cj;
        std::vector<std::size_t> pos;
        for (std::size_t m : c.modes) pos.push_back(m + 1);
        cj["positions"] = pos;
        cj["covectors"] = Json::array();
        for (const auto& v : c.covectors) {
            Json vj = Json::array();
            for (const auto& x : v) vj.push_back(to_string(x));
            cj["covectors"].push_back(std::move(vj));
        }
        cj["subset_index"] = c.subset_index;
        cj["trial"] = c.trial;
        j["contraction"] = std::move(cj);
    }
    if (r.numerical) j["residuals"] = r.residuals;
    if (r.stats.randomized)
        j["trials"] = {{"p0", r.stats.p0},
                       {"subsets", r.stats.subsets},
                       {"trials_per_subset", r.stats.trials_per_subset},
                       {"tasks_evaluated", r.stats.tasks_evaluated}};
    return j;
}

Json to_json(const BoundaryData& b) {
    Json j;
    j["p"] = b.p;
    j["n"] = b.n;
    j["q"] = b.q;
    Json values = Json::array();
    const auto n = static_cast<unsigned>(std::max<std::size_t>(2, b.n));
    for (std::size_t lin = 0; lin < b.core.size(); ++lin)
        values.push_back(Json::array({to_json(index_word(b.core.multi_index(lin), n)), to_string(b.core[lin])}));
    for (std::size_t s = 0; s < b.slabs.size(); ++s) {
        const std::size_t pos = b.p + 1 + s;
        for (std::size_t lin = 0; lin < b.slabs[s].size(); ++lin) {
            auto idx = b.slabs[s].multi_index(lin);
            const std::size_t sym = idx.back();
            idx.pop_back();
            const Word base = index_word(idx, n);
            if (sym != 0)
                values.push_back(Json::array({to_json(base.with(pos, static_cast<unsigned>(sym))), to_string(b.slabs[s][lin])}));
            else if (b.slabs[s][lin] != b.core[lin / b.n])
                values.push_back(Json::array({to_json(base), to_string(b.slabs[s][lin]), pos}));
        }
    }
    j["values"] = std::move(values);
    return j;
}

BoundaryData boundary_from_json(const Json& j) {
    BoundaryData b;
    b.p = size_from_json(field(j, "p"));
    b.n = size_from_json(field(j, "n"));
    b.q = size_from_json(field(j, "q"));
    if (b.n < 1 || b.q < b.p) throw DataError("boundary needs n >= 1 and q >= p");
    const auto n = static_cast<unsigned>(std::max<std::size_t>(2, b.n));
    b.core = QTensor(Shape(b.p, b.n));
    b.slabs.assign(b.q - b.p, QTensor(Shape(b.p + 1, b.n)));
    std::vector<bool> core_seen(b.core.size(), false);
    std::vector<std::vector<bool>> slab_seen(b.slabs.size(), std::vector<bool>(b.core.size() * b.n, false));
    std::vector<std::vector<bool>> override_seen(b.slabs.size(), std::vector<bool>(b.core.size(), false));
    for (const auto& e : field(j, "values")) {
        if (!e.is_array() || e.size() < 2 || e.size() > 3) throw DataError("boundary values are [word, value] or [word, value, position]");
        const Word w = word_from_json(e[0], n);
        const Rational v = rational_from_json(e[1]);
        for (const auto& [pos, sym] : w.entries())
            if (sym >= b.n || pos > b.q) throw DataError("boundary word x_" + w.to_digits() + " is outside the tensor");
        const std::size_t beyond = slab_position(w, b.p);
        std::vector<std::size_t> idx(b.p, 0);
        for (const auto& [pos, sym] : w.entries())
            if (pos <= b.p) idx[pos - 1] = sym;
        const std::size_t base = b.p == 0 ? 0 : b.core.linear_index(idx);
        if (e.size() == 3) {
            const std::size_t pos = size_from_json(e[2]);
            if (beyond != 0 || pos <= b.p || pos > b.q) throw DataError("slab override needs a word in [p] and a position in p+1..q");
            b.slabs[pos - b.p - 1][base * b.n] = v;
            override_seen[pos - b.p - 1][base] = true;
            continue;
        }
        if (beyond == 0) {
            b.core[base] = v;
            core_seen[base] = true;
            continue;
        }
        const std::size_t s = beyond - b.p - 1;
        b.slabs[s][base * b.n + w[beyond]] = v;
        slab_seen[s][base * b.n + w[beyond]] = true;
    }
    for (std::size_t i = 0; i < b.core.size(); ++i)
        if (!core_seen[i]) throw DataError("boundary is missing x_" + index_word(b.core.multi_index(i), n).to_digits());
    for (std::size_t s = 0; s < b.slabs.size(); ++s)
        for (std::size_t i = 0; i < b.core.size(); ++i) {
            if (!override_seen[s][i]) b.slabs[s][i * b.n] = b.core[i];
            for (std::size_t sym = 1; sym < b.n; ++sym)
                if (!slab_seen[s][i * b.n + sym])
                    throw DataError("boundary is missing x_" +
                                    index_word(b.core.multi_index(i), n).with(b.p + 1 + s, static_cast<unsigned>(sym)).to_digits());
        }
    return b;
}

Json to_json(const Pivot& p) {
    Json j;
    j["p"] = p.p;
    j["rows"] = Json::array();
    j["cols"] = Json::array();
    for (const auto& w : p.rows) j["rows"].push_back(to_json(w));
    for (const auto& w : p.cols) j["cols"].push_back(to_json(w));
    j["I"] = p.row_positions;
    return j;
}

Pivot pivot_from_json(const Json& j, unsigned alphabet) {
    Pivot p;
    p.p = size_from_json(field(j, "p"));
    for (const auto& w : field(j, "rows")) p.rows.push_back(word_from_json(w, alphabet));
    for (const auto& w : field(j, "cols")) p.cols.push_back(word_from_json(w, alphabet));
    for (const auto& x : field(j, "I")) p.row_positions.push_back(size_from_json(x));
    std::sort(p.row_positions.begin(), p.row_positions.end());
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw DataError(e.what());
    }
    return p;
}

Json to_json(const ProbeResult& r) {
    Json j;
    j["dims"] = r.dims;
    j["k"] = r.k;
    j["degree"] = r.d;
    j["monomials"] = r.monomials;
    j["samples"] = r.samples;
    j["nullity"] = r.nullity;
    j["exact"] = r.exact;
    j["modulus"] = r.modulus;
    j["primes"] = r.primes;
    j["prime_nullities"] = r.prime_nullities;
    j["rounds"] = r.rounds;
    return j;
}

Json to_json(const PhyloReport& r) {
    Json j;
    j["verdict"] = std::string(verdict_name(r.verdict));
    j["pass"] = r.passed;
    j["k"] = r.k;
    j["edges"] = Json::array();
    for (const auto& e : r.edges) {
        std::vector<std::size_t> rows;
        for (std::size_t m : e.row_modes) rows.push_back(m + 1);
        Json ej{{"node", e.node}, {"row_leaves", rows}, {"rank", e.rank}, {"ok", !e.violation}};
        if (e.violation) ej["witness"] = to_json(*e.violation);
        j["edges"].push_back(std::move(ej));
    }
    j["stars"] = Json::array();
    for (const auto& s : r.stars) {
        Json groups = Json::array();
        for (const auto& g : s.groups) {
            std::vector<std::size_t> one;
            for (std::size_t m : g) one.push_back(m + 1);
            groups.push_back(one);
        }
        j["stars"].push_back({{"node", s.node}, {"groups", std::move(groups)}, {"report", to_json(s.report)}});
    }
    return j;
}

Json read_json_file(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace brank
