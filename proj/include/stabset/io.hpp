#pragma once

// Plain-text set and witness files.
//
//   stabset v1            stabwit v1
//   group f2 n=<n>        group f2 n=<n>   (or: group z)
//   <element>             k=<k>
//   ...                   s <element>      k lines
//                         t <element>      k lines
//
// F2 elements are bitstrings with coordinate 1 leftmost; Z elements are
// signed decimals. Serialization lists set elements in increasing order,
// so canonical files round-trip byte for byte.

#include "stabset/orderprop.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace stabset {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using AnySet = std::variant<F2Set, ZSet>;
using AnyWitness = std::variant<F2Witness, ZWitness>;

namespace io_detail {

inline std::vector<std::string_view> split_lines(std::string_view text)
{
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            lines.push_back(text.substr(pos));
            break;
        }
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    for (auto& l : lines)
        if (!l.empty() && l.back() == '\r')
            l.remove_suffix(1);
    return lines;
}

inline std::size_t parse_size(std::string_view s, std::string_view what)
{
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw ParseError("invalid " + std::string(what) + ": '" + std::string(s) + "'");
    return v;
}

inline Ambient parse_group(std::string_view line)
{
    if (line == "group z")
        return Ambient::z();
    constexpr std::string_view prefix = "group f2 n=";
    if (line.substr(0, prefix.size()) != prefix)
        throw ParseError("expected 'group f2 n=<n>' or 'group z', got '" + std::string(line) + "'");
    const auto n = parse_size(line.substr(prefix.size()), "dimension");
    if (n > BitVector::kMaxDim)
        throw ParseError("dimension " + std::to_string(n) + " exceeds the cap of " + std::to_string(BitVector::kMaxDim));
    return Ambient::f2(n);
}

inline BitVector parse_bits(std::string_view s, std::size_t n)
{
    if (s.size() != n)
        throw ParseError("element '" + std::string(s) + "' does not have length " + std::to_string(n));
    try {
        return BitVector::from_string(s);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

inline std::int64_t parse_int(std::string_view s)
{
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw ParseError("invalid integer element '" + std::string(s) + "'");
    return v;
}

inline std::string group_line(const Ambient& amb)
{
    return amb.kind == GroupKind::Z ? "group z" : "group f2 n=" + std::to_string(amb.n);
}

inline std::string show(const BitVector& x) { return x.to_string(); }
inline std::string show(std::int64_t x) { return std::to_string(x); }

} // namespace io_detail

inline AnySet parse_set(std::string_view text)
{
    const auto lines = io_detail::split_lines(text);
    if (lines.empty() || lines[0] != "stabset v1")
        throw ParseError("missing 'stabset v1' header");
    if (lines.size() < 2)
        throw ParseError("missing group line");
    const auto amb = io_detail::parse_group(lines[1]);
    auto finish = [&](auto elems) -> AnySet {
        using Elem = typename decltype(elems)::value_type;
        auto sorted = elems;
        std::sort(sorted.begin(), sorted.end());
        if (auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end())
            throw ParseError("duplicate element " + io_detail::show(*dup));
        return FiniteSet<Elem>(amb, std::move(elems));
    };
    if (amb.kind == GroupKind::Z) {
        std::vector<std::int64_t> xs;
        for (std::size_t i = 2; i < lines.size(); ++i)
            xs.push_back(io_detail::parse_int(lines[i]));
        return finish(std::move(xs));
    }
    std::vector<BitVector> xs;
    for (std::size_t i = 2; i < lines.size(); ++i)
        xs.push_back(io_detail::parse_bits(lines[i], amb.n));
    return finish(std::move(xs));
}

template <class Elem>
std::string serialize_set(const FiniteSet<Elem>& A)
{
    std::string out = "stabset v1\n" + io_detail::group_line(A.ambient()) + "\n";
    for (const auto& x : A.elements())
        out += io_detail::show(x) + "\n";
    return out;
}

inline std::string serialize_set(const AnySet& A)
{
    return std::visit([](const auto& a) { return serialize_set(a); }, A);
}

inline AnyWitness parse_witness(std::string_view text)
{
    const auto lines = io_detail::split_lines(text);
    if (lines.empty() || lines[0] != "stabwit v1")
        throw ParseError("missing 'stabwit v1' header");
    if (lines.size() < 3)
        throw ParseError("truncated witness header");
    const auto amb = io_detail::parse_group(lines[1]);
    if (lines[2].substr(0, 2) != "k=")
        throw ParseError("expected 'k=<k>', got '" + std::string(lines[2]) + "'");
    const auto k = io_detail::parse_size(lines[2].substr(2), "k");
    if (k > lines.size() || lines.size() != 3 + 2 * k)
        throw ParseError("expected " + std::to_string(2 * k) + " element lines, found " +
                         std::to_string(lines.size() - 3));
    auto element = [&](std::size_t idx, char role) {
        const auto line = lines[idx];
        if (line.size() < 2 || line[0] != role || line[1] != ' ')
            throw ParseError("line " + std::to_string(idx + 1) + ": expected '" + role + " <element>'");
        return line.substr(2);
    };
    if (amb.kind == GroupKind::Z) {
        std::vector<std::int64_t> s, t;
        for (std::size_t i = 0; i < k; ++i)
            s.push_back(io_detail::parse_int(element(3 + i, 's')));
        for (std::size_t i = 0; i < k; ++i)
            t.push_back(io_detail::parse_int(element(3 + k + i, 't')));
        return ZWitness(amb, std::move(s), std::move(t));
    }
    std::vector<BitVector> s, t;
    for (std::size_t i = 0; i < k; ++i)
        s.push_back(io_detail::parse_bits(element(3 + i, 's'), amb.n));
    for (std::size_t i = 0; i < k; ++i)
        t.push_back(io_detail::parse_bits(element(3 + k + i, 't'), amb.n));
    return F2Witness(amb, std::move(s), std::move(t));
}

template <class Elem>
std::string serialize_witness(const Witness<Elem>& w)
{
    std::string out = "stabwit v1\n" + io_detail::group_line(w.ambient()) + "\nk=" + std::to_string(w.k()) + "\n";
    for (const auto& x : w.s())
        out += "s " + io_detail::show(x) + "\n";
    for (const auto& x : w.t())
        out += "t " + io_detail::show(x) + "\n";
    return out;
}

inline std::string serialize_witness(const AnyWitness& w)
{
    return std::visit([](const auto& x) { return serialize_witness(x); }, w);
}

inline std::string read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

inline AnySet load_set(const std::string& path) { return parse_set(read_text_file(path)); }
inline AnyWitness load_witness(const std::string& path) { return parse_witness(read_text_file(path)); }

} // namespace stabset
