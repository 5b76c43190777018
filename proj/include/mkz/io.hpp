#pragma once

#include "mkz/verification.hpp"

#include <json.hpp>

#include <string>

namespace mkz {

/// LATTICE v1 text format:
///   LATTICE v1
///   <rank> <ambient_dim>
///   rank rows of ambient_dim rationals "p/q" or "p", single-space separated.
std::string serialize_lattice(const Lattice& lattice);

/// Strict parser; every deviation from the format throws ParseError.
Lattice parse_lattice(const std::string& text);

Lattice read_lattice_file(const std::string& path);
void write_lattice_file(const std::string& path, const Lattice& lattice);

/// Strict rational token: optional '-', digits, optional "/digits" with a
/// denominator > 1 and the fraction in lowest terms.
Rational parse_exact_token(const std::string& token);

using Json = nlohmann::ordered_json;

/// Machine-readable report: every exact number is stored as a "p/q" string.
class ReportDocument {
public:
    ReportDocument(const std::string& lattice_id, const std::string& operation);
    explicit ReportDocument(Json doc) : doc_(std::move(doc)) {}

    Json& json() { return doc_; }
    const Json& json() const { return doc_; }

    void set(const std::string& key, const Rational& value);
    void set(const std::string& key, const RationalVector& value);
    void set(const std::string& key, const RationalMatrix& value);
    void set(const std::string& key, const IntVector& value);
    void set_text(const std::string& key, const std::string& value);
    void set_flag(const std::string& key, bool value);
    void set_count(const std::string& key, std::uint64_t value);
    void set_elapsed_ms(double ms);
    void set_verdict(bool pass);

    Rational get_rational(const std::string& key) const;
    RationalMatrix get_matrix(const std::string& key) const;

    std::string dump() const;
    static ReportDocument parse(const std::string& text);

private:
    Json doc_;
};

Json to_json(const Rational& q);
Json to_json(const RationalVector& v);
Json to_json(const RationalMatrix& m);
Json to_json(const IntVector& v);
Rational rational_from_json(const Json& j);
RationalMatrix matrix_from_json(const Json& j);

ReportDocument report_reduction(const std::string& lattice_id, const ReductionResult& res, double elapsed_ms);
ReportDocument report_minima(const std::string& lattice_id, const MinimaReport& minima,
                             const ShortestBasisReport* shortest, double elapsed_ms);
ReportDocument report_appendix(const AppendixReport& rep);
ReportDocument report_theorem(const TheoremReport& rep, const std::string& operation);

} // namespace mkz
