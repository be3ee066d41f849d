#pragma once

#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qcover/family.hpp"
#include "qcover/inequalities.hpp"
#include "qcover/maxsearch.hpp"
#include "qcover/singular.hpp"

namespace qcover {

inline constexpr const char* kToolVersion = "qcover 0.1.0";

using OrderedJson = nlohmann::ordered_json;

/// One subspace as a text record: basis rows joined by ';', entries by ' '.
inline std::string subspace_line(const Subspace& s) {
    std::string out;
    for (int i = 0; i < s.dim(); ++i) {
        if (i) out += ';';
        for (int j = 0; j < s.ambient(); ++j) {
            if (j) out += ' ';
            out += std::to_string(s.basis().at(i, j));
        }
    }
    return out;
}

inline Subspace parse_subspace_line(const FieldPtr& f, int ambient, const std::string& line) {
    std::vector<std::vector<Elem>> rows;
    std::stringstream ss(line);
    std::string part;
    while (std::getline(ss, part, ';')) {
        std::vector<Elem> row;
        std::stringstream rs(part);
        long v;
        while (rs >> v) {
            if (v < 0 || v >= static_cast<long>(f->q()))
                fail(errc::parse, "entry " + std::to_string(v) + " outside [0, q)");
            row.push_back(static_cast<Elem>(v));
        }
        if (!rs.eof()) fail(errc::parse, "malformed row: " + part);
        if (static_cast<int>(row.size()) != ambient)
            fail(errc::parse, "row has " + std::to_string(row.size()) + " entries, expected " +
                                  std::to_string(ambient));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) fail(errc::parse, "empty subspace record");
    return Subspace::span(f, ambient, rows);
}

struct LoadedFamily {
    Family family;
    std::optional<SingularSpace> sing; // present when the header carries l=
};

/// Family file: header `q=<int> n=<int> m=<int> count=<int>` with optional
/// `l=<int>` (ambient = n+l, distinguished subspace = last l coordinates),
/// then one subspace per line, '#' starting a comment. Arbitrary bases are
/// canonicalized on read; writing always emits canonical sorted output, so a
/// write-read-write cycle is byte identical.
inline LoadedFamily read_family(std::istream& in) {
    std::string line;
    auto next_content = [&](std::string& out) -> bool {
        while (std::getline(in, line)) {
            std::size_t i = line.find_first_not_of(" \t\r");
            if (i == std::string::npos) continue;
            if (line[i] == '#') continue;
            out = line;
            return true;
        }
        return false;
    };

    std::string header;
    if (!next_content(header)) fail(errc::parse, "missing family header");
    long q = -1, n = -1, m = -1, count = -1, l = -1;
    bool seen_l = false;
    {
        std::stringstream hs(header);
        std::string tok;
        while (hs >> tok) {
            auto eq = tok.find('=');
            if (eq == std::string::npos) fail(errc::parse, "bad header token: " + tok);
            std::string key = tok.substr(0, eq);
            long val;
            try {
                val = std::stol(tok.substr(eq + 1));
            } catch (const std::exception&) {
                fail(errc::parse, "bad header value: " + tok);
            }
            if (key == "q") q = val;
            else if (key == "n") n = val;
            else if (key == "m") m = val;
            else if (key == "count") count = val;
            else if (key == "l") {
                l = val;
                seen_l = true;
            } else
                fail(errc::parse, "unknown header key: " + key);
        }
    }
    if (q < 0 || n < 0 || m < 0 || count < 0)
        fail(errc::parse, "header must set q, n, m and count");
    if (seen_l && l < 0) fail(errc::parse, "header l must be nonnegative");
    FieldPtr f = Field::make_shared(static_cast<unsigned long>(q));
    const int ambient = static_cast<int>(n) + static_cast<int>(seen_l ? l : 0);

    std::vector<Subspace> members;
    for (long i = 0; i < count; ++i) {
        std::string body;
        if (!next_content(body))
            fail(errc::parse, "expected " + std::to_string(count) + " subspaces, found " +
                                  std::to_string(i));
        Subspace s = parse_subspace_line(f, ambient, body);
        if (s.dim() != m)
            fail(errc::parse, "subspace on line has dimension " + std::to_string(s.dim()) +
                                  ", expected " + std::to_string(m));
        members.push_back(std::move(s));
    }
    std::string extra;
    if (next_content(extra)) fail(errc::parse, "trailing content after the declared count");

    Family fam = Family::of(f, ambient, static_cast<int>(m), std::move(members));
    if (fam.size() != static_cast<std::size_t>(count))
        fail(errc::parse, "duplicate subspaces in family body");
    std::optional<SingularSpace> sing;
    if (seen_l) sing.emplace(f, static_cast<int>(n), static_cast<int>(l));
    return {std::move(fam), std::move(sing)};
}

inline void write_family(std::ostream& out, const Family& fam,
                         const std::optional<SingularSpace>& sing = {}) {
    if (sing && (sing->ambient() != fam.ambient() || sing->f().q() != fam.f().q()))
        fail(errc::mismatch, "singular space does not match the family's ambient space");
    const int l = sing ? sing->l() : 0;
    const int n = fam.ambient() - l;
    out << "q=" << fam.f().q() << " n=" << n << " m=" << fam.m() << " count=" << fam.size();
    if (sing) out << " l=" << l;
    out << '\n';
    for (const auto& s : fam.members()) out << subspace_line(s) << '\n';
}

inline std::string family_to_string(const Family& fam,
                                    const std::optional<SingularSpace>& sing = {}) {
    std::ostringstream ss;
    write_family(ss, fam, sing);
    return ss.str();
}

inline LoadedFamily read_family_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::parse, "cannot open family file: " + path);
    return read_family(in);
}

inline void write_family_file(const std::string& path, const Family& fam,
                              const std::optional<SingularSpace>& sing = {}) {
    std::ofstream out(path);
    if (!out) fail(errc::parse, "cannot open output file: " + path);
    write_family(out, fam, sing);
}

// -- certificates -----------------------------------------------------------

/// Certificates are JSON objects with a fixed key order so that a
/// parse-serialize cycle is lossless and diffable. Big integers are carried
/// as decimal strings.
inline OrderedJson make_certificate(const std::string& kind, OrderedJson parameters,
                                    OrderedJson result, OrderedJson witness, OrderedJson steps,
                                    bool optimal, std::uint64_t nodes) {
    OrderedJson cert;
    cert["kind"] = kind;
    cert["parameters"] = std::move(parameters);
    cert["result"] = std::move(result);
    cert["witness"] = std::move(witness);
    cert["steps"] = std::move(steps);
    cert["optimal"] = optimal;
    cert["nodes"] = nodes;
    cert["tool_version"] = kToolVersion;
    return cert;
}

inline OrderedJson steps_to_json(const std::vector<IneqStep>& steps) {
    OrderedJson arr = OrderedJson::array();
    for (const auto& s : steps) {
        OrderedJson j;
        j["label"] = s.label;
        j["lhs"] = s.lhs.get_str();
        j["rhs"] = s.rhs.get_str();
        j["relation"] = s.strict ? "<" : "<=";
        j["holds"] = s.holds;
        arr.push_back(std::move(j));
    }
    return arr;
}

inline OrderedJson ineq_certificate(const std::string& kind, const IneqReport& rep) {
    OrderedJson params;
    for (const auto& [k, v] : rep.params) params[k] = v;
    OrderedJson result;
    result["lhs"] = rep.lhs.get_str();
    result["rhs"] = rep.rhs.get_str();
    result["holds"] = rep.holds;
    result["all_steps_hold"] = rep.all_hold();
    return make_certificate(kind, std::move(params), std::move(result), nullptr,
                            steps_to_json(rep.steps), rep.all_hold(), 0);
}

inline OrderedJson tau_certificate(const CoverResult& res, const Family& fam,
                                   const std::optional<SingularSpace>& sing,
                                   const std::string& source, bool oracle) {
    OrderedJson params;
    params["q"] = fam.f().q();
    params["n"] = fam.ambient() - (sing ? sing->l() : 0);
    if (sing) params["l"] = sing->l();
    params["m"] = fam.m();
    params["family"] = source;
    params["oracle"] = oracle;
    OrderedJson result;
    result["tau"] = res.tau;
    result["exact"] = res.exact;
    result["intersecting"] = res.family_intersecting;
    // witness as a one-member family file so it round-trips through `tau`
    Family wit = Family::of(fam.field(), fam.ambient(), res.witness.dim(), {res.witness});
    return make_certificate("tau", std::move(params), std::move(result),
                            family_to_string(wit, sing), OrderedJson::array(), res.exact,
                            res.nodes);
}

inline OrderedJson search_certificate(const SearchCertificate& cert,
                                      const std::optional<std::string>& witness_path) {
    OrderedJson params;
    params["q"] = cert.params.q;
    params["n"] = cert.params.n;
    params["m"] = cert.params.m;
    params["min_tau"] = cert.params.min_tau;
    if (cert.params.target)
        params["target"] = *cert.params.target;
    else
        params["target"] = "maximize";
    OrderedJson result;
    result["size"] = cert.best_size;
    result["found"] = cert.found;
    result["optima"] = cert.optima.size();
    result["wall_seconds"] = cert.wall_seconds;
    OrderedJson witness;
    if (cert.witness) {
        if (witness_path)
            witness = *witness_path;
        else
            witness = family_to_string(*cert.witness);
    }
    return make_certificate(cert.params.target ? "exists" : "search-max", std::move(params),
                            std::move(result), std::move(witness), OrderedJson::array(),
                            cert.optimal, cert.nodes);
}

} // namespace qcover
