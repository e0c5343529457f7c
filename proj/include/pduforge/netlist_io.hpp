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

#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "pduforge/circuit.hpp"
#include "pduforge/errors.hpp"

namespace pduforge::circuit {

/// Malformed netlist text; carries the 1-based offending line.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/**
 * Line-oriented netlist format, one item per line, whitespace separated:
 *
 *   mode <idx> <path_label> <band>
 *   source <mode>
 *   bs <m1> <m2> <theta_rad>
 *   phase <m> <phi_rad>
 *   cross <m1> <m2>
 *   pdu <in> <out_s> <out_i> <eta_pdc> <eta_puc_s> <eta_puc_i> [<pdc_fail> <puc_s_fail> <puc_i_fail>]
 *
 * Lines starting with '#' are comments, except the two directives
 * "# name: <text>" and "# encoding: <rail0>:<rail1> ..." which round-trip.
 * Mode indices must be declared in order starting from 0.
 */
Netlist parse_netlist(std::string_view text);

/// Canonical form: directives, then modes, then components; reals in
/// shortest round-trip notation. write(parse(write(n))) == write(n).
std::string write_netlist(const Netlist& netlist);

/// "<rail0>:<rail1> <rail0>:<rail1> ..." as used by the encoding directive and the CLI.
std::vector<RailPair> parse_encoding(std::string_view text);
std::string format_encoding(const std::vector<RailPair>& encoding);

/// Shortest decimal representation that parses back to the same double.
std::string format_real(double value);

}  // namespace pduforge::circuit
