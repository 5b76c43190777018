#include "mkz/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace mkz {

namespace {

bool all_digits(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

bool canonical_digits(const std::string& s) { return all_digits(s) && (s.size() == 1 || s[0] != '0'); }

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        const auto nl = text.find('\n', start);
        if (nl == std::string::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    return lines;
}

std::vector<std::string> split_spaces(const std::string& line, std::size_t lineno) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto sp = line.find(' ', start);
        const std::string tok = line.substr(start, sp == std::string::npos ? std::string::npos : sp - start);
        if (tok.empty())
            throw ParseError("line " + std::to_string(lineno) + ": expected single spaces between fields");
        out.push_back(tok);
        if (sp == std::string::npos)
            return out;
        start = sp + 1;
    }
}

std::size_t parse_count(const std::string& tok, std::size_t lineno) {
    if (!canonical_digits(tok) || tok.size() > 9)
        throw ParseError("line " + std::to_string(lineno) + ": bad count '" + tok + "'");
    return static_cast<std::size_t>(std::stoul(tok));
}

} // namespace

Rational parse_exact_token(const std::string& token) {
    std::string body = token;
    if (!body.empty() && body[0] == '-')
        body = body.substr(1);
    const auto slash = body.find('/');
    const std::string num = body.substr(0, slash);
    if (!canonical_digits(num) || (token[0] == '-' && num == "0"))
        throw ParseError("bad rational '" + token + "'");
    if (slash == std::string::npos)
        return Rational(Integer(token));
    const std::string den = body.substr(slash + 1);
    if (!canonical_digits(den) || den == "0" || den == "1")
        throw ParseError("bad rational '" + token + "'");
    const Integer n(token.substr(0, token.find('/')));
    const Integer d(den);
    if (gcd(n, d) != 1)
        throw ParseError("rational not in lowest terms '" + token + "'");
    return make_rational(n, d);
}

std::string serialize_lattice(const Lattice& lattice) {
    std::ostringstream out;
    out << "LATTICE v1\n" << lattice.rank() << ' ' << lattice.ambient_dim() << '\n';
    for (const auto& row : lattice.basis()) {
        for (std::size_t j = 0; j < row.size(); ++j)
            out << (j ? " " : "") << to_string(row[j]);
        out << '\n';
    }
    return out.str();
}

Lattice parse_lattice(const std::string& text) {
    auto lines = split_lines(text);
    if (lines.size() < 2 || lines[0] != "LATTICE v1")
        throw ParseError("line 1: expected header 'LATTICE v1'");
    const auto dims = split_spaces(lines[1], 2);
    if (dims.size() != 2)
        throw ParseError("line 2: expected '<rank> <ambient_dim>'");
    const std::size_t rank = parse_count(dims[0], 2);
    const std::size_t ambient = parse_count(dims[1], 2);
    if (rank == 0 || ambient == 0 || rank > ambient)
        throw ParseError("line 2: need 1 <= rank <= ambient_dim");
    if (lines.size() != rank + 2)
        throw ParseError("expected exactly " + std::to_string(rank) + " basis rows");
    RationalMatrix basis;
    for (std::size_t i = 0; i < rank; ++i) {
        const auto toks = split_spaces(lines[i + 2], i + 3);
        if (toks.size() != ambient)
            throw ParseError("line " + std::to_string(i + 3) + ": expected " + std::to_string(ambient) + " entries");
        RationalVector row;
        for (const auto& t : toks) {
            try {
                row.push_back(parse_exact_token(t));
            } catch (const ParseError& e) {
                throw ParseError("line " + std::to_string(i + 3) + ": " + e.what());
            }
        }
        basis.push_back(std::move(row));
    }
    try {
        return Lattice(std::move(basis));
    } catch (const DependentRows&) {
        throw ParseError("basis rows are linearly dependent");
    }
}

Lattice read_lattice_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_lattice(buf.str());
}

void write_lattice_file(const std::string& path, const Lattice& lattice) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot write " + path);
    out << serialize_lattice(lattice);
}

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const RationalVector& v) {
    Json arr = Json::array();
    for (const auto& q : v)
        arr.push_back(to_string(q));
    return arr;
}

Json to_json(const RationalMatrix& m) {
    Json arr = Json::array();
    for (const auto& row : m)
        arr.push_back(to_json(row));
    return arr;
}

Json to_json(const IntVector& v) {
    Json arr = Json::array();
    for (const auto& z : v)
        arr.push_back(to_string(z));
    return arr;
}

Rational rational_from_json(const Json& j) {
    if (!j.is_string())
        throw ParseError("expected an exact rational string");
    return parse_exact_token(j.get<std::string>());
}

RationalMatrix matrix_from_json(const Json& j) {
    RationalMatrix m;
    for (const auto& row : j) {
        RationalVector r;
        for (const auto& x : row)
            r.push_back(rational_from_json(x));
        m.push_back(std::move(r));
    }
    return m;
}

ReportDocument::ReportDocument(const std::string& lattice_id, const std::string& operation) {
    doc_["lattice_id"] = lattice_id;
    doc_["operation"] = operation;
}

void ReportDocument::set(const std::string& key, const Rational& value) { doc_[key] = to_json(value); }
void ReportDocument::set(const std::string& key, const RationalVector& value) { doc_[key] = to_json(value); }
void ReportDocument::set(const std::string& key, const RationalMatrix& value) { doc_[key] = to_json(value); }
void ReportDocument::set(const std::string& key, const IntVector& value) { doc_[key] = to_json(value); }
void ReportDocument::set_text(const std::string& key, const std::string& value) { doc_[key] = value; }
void ReportDocument::set_flag(const std::string& key, bool value) { doc_[key] = value; }
void ReportDocument::set_count(const std::string& key, std::uint64_t value) { doc_[key] = value; }
void ReportDocument::set_elapsed_ms(double ms) { doc_["elapsed_ms"] = ms; }
void ReportDocument::set_verdict(bool pass) { doc_["verdict"] = pass ? "pass" : "fail"; }

Rational ReportDocument::get_rational(const std::string& key) const { return rational_from_json(doc_.at(key)); }

RationalMatrix ReportDocument::get_matrix(const std::string& key) const { return matrix_from_json(doc_.at(key)); }

std::string ReportDocument::dump() const { return doc_.dump(2) + "\n"; }

ReportDocument ReportDocument::parse(const std::string& text) {
    try {
        return ReportDocument(Json::parse(text));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("report: ") + e.what());
    }
}

ReportDocument report_reduction(const std::string& lattice_id, const ReductionResult& res, double elapsed_ms) {
    ReportDocument doc(lattice_id, "reduce");
    doc.set_text("algorithm", to_string(res.kind));
    doc.set("basis", res.basis);
    Json norms = Json::array();
    Json ties = Json::array();
    for (const auto& s : res.steps) {
        norms.push_back(to_string(s.norm_sq));
        ties.push_back(s.ties);
    }
    doc.json()["norms_sq"] = norms;
    doc.json()["ties"] = ties;
    doc.set("max_norm_sq", res.max_norm_sq());
    Json transform = Json::array();
    for (const auto& row : res.transform)
        transform.push_back(to_json(row));
    doc.json()["transform"] = transform;
    doc.set_elapsed_ms(elapsed_ms);
    return doc;
}

ReportDocument report_minima(const std::string& lattice_id, const MinimaReport& minima,
                             const ShortestBasisReport* shortest, double elapsed_ms) {
    ReportDocument doc(lattice_id, "minima");
    doc.set("minima_sq", RationalVector(minima.minima_sq.begin(), minima.minima_sq.end()));
    doc.set("witnesses", minima.witnesses);
    if (shortest) {
        doc.set("lambda_bar_sq", shortest->max_norm_sq);
        doc.set("shortest_basis", shortest->basis);
        doc.set_flag("certified", shortest->certified);
        doc.set("search_bound_sq", shortest->search_bound);
        doc.set_count("pool_size", shortest->pool_size);
        doc.set_count("search_nodes", shortest->search_nodes);
    }
    doc.set_elapsed_ms(elapsed_ms);
    return doc;
}

ReportDocument report_appendix(const AppendixReport& rep) {
    ReportDocument doc(rep.lattice_id, "verify family-scan");
    doc.set_verdict(rep.success());
    doc.set("relation", rep.relation.coefficients);
    doc.set_flag("no_unit_coefficient", rep.no_unit_coefficient);
    Json fams = Json::object();
    for (const auto& f : rep.families_checked)
        fams[f.family] = f.checked;
    doc.json()["families_checked"] = fams;
    doc.set("violations", rep.violations);
    doc.set_text("exhaustiveness", rep.exhaustiveness);
    doc.set_elapsed_ms(rep.elapsed_ms);
    return doc;
}

ReportDocument report_theorem(const TheoremReport& rep, const std::string& operation) {
    ReportDocument doc(rep.lattice_id, operation);
    doc.set_verdict(rep.passed());
    doc.set_text("claim", rep.claim);
    Json q = Json::object();
    for (const auto& [k, v] : rep.quantities)
        q[k] = to_string(v);
    doc.json()["quantities"] = q;
    Json verdicts = Json::array();
    for (const auto& v : rep.verdicts)
        verdicts.push_back(Json{{"claim", v.claim}, {"lhs", v.lhs}, {"relation", v.relation}, {"rhs", v.rhs},
                                {"holds", v.holds}});
    doc.json()["verdicts"] = verdicts;
    Json checks = Json::array();
    for (const auto& c : rep.checks)
        checks.push_back(Json{{"check", c.name}, {"holds", c.holds}});
    doc.json()["checks"] = checks;
    Json flags = Json::object();
    for (const auto& f : rep.flags)
        flags[f.name] = f.holds;
    doc.json()["flags"] = flags;
    Json wit = Json::object();
    for (const auto& [k, m] : rep.witnesses)
        wit[k] = to_json(m);
    doc.json()["witnesses"] = wit;
    doc.set_elapsed_ms(rep.elapsed_ms);
    return doc;
}

} // namespace mkz
