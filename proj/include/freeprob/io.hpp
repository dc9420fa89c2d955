// SPDX-License-Identifier: Apache-2.0
//
// Line-oriented text formats (versioned with a `format: 1` header) and CSV
// output. All numbers are printed with 17 significant digits so round-trips
// are lossless.
#pragma once

#include <cctype>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "core.hpp"

namespace freeprob {

inline std::string format_full(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace iodetail {

inline bool significant(const std::string& line) {
    for (char c : line) {
        if (c == '#')
            return false;
        if (!std::isspace(static_cast<unsigned char>(c)))
            return true;
    }
    return false;
}

inline std::vector<std::string> significant_lines(std::istream& in) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line))
        if (significant(line))
            lines.push_back(line);
    return lines;
}

inline void check_header(const std::vector<std::string>& lines) {
    if (lines.empty())
        throw parse_error("empty input");
    std::istringstream h(lines.front());
    std::string tag;
    int version = 0;
    if (!(h >> tag >> version) || tag != "format:" || version != 1)
        throw parse_error("expected `format: 1` header line");
}

} // namespace iodetail

// format: 1
// moments: m1 m2 ... mK
inline moment_sequence read_moment_file(std::istream& in) {
    const auto lines = iodetail::significant_lines(in);
    iodetail::check_header(lines);
    if (lines.size() != 2)
        throw parse_error("expected exactly one `moments:` record");
    std::istringstream body(lines[1]);
    std::string tag;
    if (!(body >> tag) || tag != "moments:")
        throw parse_error("expected a `moments:` record");
    std::vector<double> m;
    double v = 0.0;
    while (body >> v)
        m.push_back(v);
    if (!body.eof())
        throw parse_error("malformed number in moments record");
    if (m.empty())
        throw parse_error("moments record is empty");
    return moment_sequence(std::move(m));
}

// format: 1
// atom <position> <weight>   (one line per atom)
inline atomic_measure read_atomic_file(std::istream& in) {
    const auto lines = iodetail::significant_lines(in);
    iodetail::check_header(lines);
    if (lines.size() < 2)
        throw parse_error("expected at least one `atom` record");
    std::vector<atomic_measure::atom> atoms;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::istringstream body(lines[i]);
        std::string tag;
        double pos = 0.0, w = 0.0;
        if (!(body >> tag >> pos >> w) || tag != "atom")
            throw parse_error("expected `atom <position> <weight>` records");
        std::string extra;
        if (body >> extra)
            throw parse_error("trailing tokens in atom record");
        atoms.push_back({pos, w});
    }
    return atomic_measure(std::move(atoms)); // weight invariants checked by the type
}

inline void write_moment_file(std::ostream& out, const moment_sequence& ms) {
    out << "format: 1\n";
    out << "moments:";
    for (double v : ms.m)
        out << ' ' << format_full(v);
    out << '\n';
}

inline void write_atomic_file(std::ostream& out, const atomic_measure& mu) {
    out << "format: 1\n";
    for (const auto& a : mu.atoms)
        out << "atom " << format_full(a.position) << ' ' << format_full(a.weight) << '\n';
}

inline void write_moments_csv(std::ostream& out, const moment_sequence& ms) {
    out << "k,m_k\n";
    for (int k = 1; k <= ms.order(); ++k)
        out << k << ',' << format_full(ms.at(k)) << '\n';
}

inline void write_estimate_csv(std::ostream& out, const moment_sequence& mean,
                               const std::vector<double>& std_error) {
    out << "k,m_k,stderr\n";
    for (int k = 1; k <= mean.order(); ++k)
        out << k << ',' << format_full(mean.at(k)) << ','
            << format_full(std_error[static_cast<std::size_t>(k - 1)]) << '\n';
}

} // namespace freeprob
