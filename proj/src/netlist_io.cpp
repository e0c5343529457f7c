/**
 * Copyright 2026 The pdu-forge Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "pduforge/netlist_io.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

namespace pduforge::circuit {

namespace {

std::vector<std::string_view> split_whitespace(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i) tokens.push_back(line.substr(i, j - i));
        i = j;
    }
    return tokens;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

class LineReader {
public:
    LineReader(std::size_t line, std::vector<std::string_view> tokens) : line_(line), tokens_(std::move(tokens)) {}

    void expect_count(std::size_t n) const {
        if (tokens_.size() != n)
            throw ParseError(line_, "'" + std::string(tokens_[0]) + "' expects " + std::to_string(n - 1) +
                                        " fields, got " + std::to_string(tokens_.size() - 1));
    }

    std::size_t index(std::size_t pos) const {
        std::size_t value = 0;
        const auto tok = tokens_.at(pos);
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (ec != std::errc{} || ptr != tok.data() + tok.size())
            throw ParseError(line_, "expected a mode index, got '" + std::string(tok) + "'");
        return value;
    }

    double real(std::size_t pos) const {
        double value = 0.0;
        const auto tok = tokens_.at(pos);
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (ec != std::errc{} || ptr != tok.data() + tok.size() || !std::isfinite(value))
            throw ParseError(line_, "expected a finite real number, got '" + std::string(tok) + "'");
        return value;
    }

    std::string_view token(std::size_t pos) const { return tokens_.at(pos); }
    std::size_t size() const { return tokens_.size(); }

private:
    std::size_t line_;
    std::vector<std::string_view> tokens_;
};

}  // namespace

std::string format_real(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

std::vector<RailPair> parse_encoding(std::string_view text) {
    std::vector<RailPair> pairs;
    std::string normalized(text);
    for (char& ch : normalized)
        if (ch == ',') ch = ' ';
    for (auto tok : split_whitespace(normalized)) {
        const auto colon = tok.find(':');
        if (colon == std::string_view::npos) throw InvalidArgument("encoding pair '" + std::string(tok) + "' lacks ':'");
        RailPair pair;
        auto parse_part = [&](std::string_view part, std::size_t& out) {
            auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
            if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size())
                throw InvalidArgument("bad mode index in encoding pair '" + std::string(tok) + "'");
        };
        parse_part(tok.substr(0, colon), pair.rail0);
        parse_part(tok.substr(colon + 1), pair.rail1);
        pairs.push_back(pair);
    }
    return pairs;
}

std::string format_encoding(const std::vector<RailPair>& encoding) {
    std::string out;
    for (std::size_t j = 0; j < encoding.size(); ++j) {
        if (j) out += ' ';
        out += std::to_string(encoding[j].rail0) + ":" + std::to_string(encoding[j].rail1);
    }
    return out;
}

Netlist parse_netlist(std::string_view text) {
    Netlist netlist;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        const std::string_view body = trim(line);
        if (body.empty()) {
            if (end == text.size()) break;
            continue;
        }
        if (body.front() == '#') {
            const std::string_view comment = trim(body.substr(1));
            if (comment.starts_with("name:")) {
                netlist.name = std::string(trim(comment.substr(5)));
            } else if (comment.starts_with("encoding:")) {
                try {
                    netlist.encoding = parse_encoding(comment.substr(9));
                } catch (const InvalidArgument& e) {
                    throw ParseError(line_no, e.what());
                }
            }
            if (end == text.size()) break;
            continue;
        }

        LineReader r(line_no, split_whitespace(body));
        const std::string_view kind = r.token(0);
        if (kind == "mode") {
            r.expect_count(4);
            const std::size_t idx = r.index(1);
            if (idx != netlist.registry.size())
                throw ParseError(line_no, "mode index " + std::to_string(idx) + " out of order, expected " +
                                              std::to_string(netlist.registry.size()));
            auto band = fock::parse_band(r.token(3));
            if (!band) throw ParseError(line_no, "unknown band '" + std::string(r.token(3)) + "'");
            netlist.registry.add(std::string(r.token(2)), *band);
        } else if (kind == "source") {
            r.expect_count(2);
            netlist.components.push_back({Source{r.index(1)}, line_no});
        } else if (kind == "bs") {
            r.expect_count(4);
            netlist.components.push_back({BeamSplitter{r.index(1), r.index(2), {r.real(3)}}, line_no});
        } else if (kind == "phase") {
            r.expect_count(3);
            netlist.components.push_back({Phase{r.index(1), r.real(2)}, line_no});
        } else if (kind == "cross") {
            r.expect_count(3);
            netlist.components.push_back({Crosser{r.index(1), r.index(2)}, line_no});
        } else if (kind == "pdu") {
            if (r.size() != 7 && r.size() != 10)
                throw ParseError(line_no, "'pdu' expects 6 or 9 fields, got " + std::to_string(r.size() - 1));
            Pdu pdu{r.index(1), r.index(2), r.index(3), std::nullopt, {r.real(4), r.real(5), r.real(6)}};
            if (r.size() == 10) pdu.residuals = optics::PduResiduals{r.index(7), r.index(8), r.index(9)};
            netlist.components.push_back({pdu, line_no});
        } else {
            throw ParseError(line_no, "unknown directive '" + std::string(kind) + "'");
        }
        if (end == text.size()) break;
    }
    return netlist;
}

std::string write_netlist(const Netlist& netlist) {
    std::ostringstream out;
    if (!netlist.name.empty()) out << "# name: " << netlist.name << '\n';
    if (!netlist.encoding.empty()) out << "# encoding: " << format_encoding(netlist.encoding) << '\n';
    for (const auto& mode : netlist.registry) {
        if (mode.path_label.empty() || split_whitespace(mode.path_label).size() != 1 ||
            mode.path_label.front() == '#')
            throw InvalidArgument("path label '" + mode.path_label + "' cannot be written");
        out << "mode " << mode.index << ' ' << mode.path_label << ' ' << fock::to_string(mode.band) << '\n';
    }
    for (const auto& component : netlist.components) {
        std::visit(
            [&out](const auto& e) {
                using T = std::decay_t<decltype(e)>;
                if constexpr (std::is_same_v<T, Source>) {
                    out << "source " << e.mode;
                } else if constexpr (std::is_same_v<T, BeamSplitter>) {
                    out << "bs " << e.m1 << ' ' << e.m2 << ' ' << format_real(e.spec.theta);
                } else if constexpr (std::is_same_v<T, Phase>) {
                    out << "phase " << e.mode << ' ' << format_real(e.phi);
                } else if constexpr (std::is_same_v<T, Crosser>) {
                    out << "cross " << e.m1 << ' ' << e.m2;
                } else {
                    out << "pdu " << e.in << ' ' << e.out_s << ' ' << e.out_i << ' ' << format_real(e.params.eta_pdc)
                        << ' ' << format_real(e.params.eta_puc_s) << ' ' << format_real(e.params.eta_puc_i);
                    if (e.residuals)
                        out << ' ' << e.residuals->pdc_fail << ' ' << e.residuals->puc_s_fail << ' '
                            << e.residuals->puc_i_fail;
                }
                out << '\n';
            },
            component.element);
    }
    return out.str();
}

}  // namespace pduforge::circuit
