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

#include <stdexcept>
#include <string>

namespace pduforge {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A creation operator or element output would exceed the per-mode cap.
class OccupancyOverflow : public Error {
public:
    using Error::Error;
};

/// Two states (or a state and an encoding) were built over different registries.
class RegistryMismatch : public Error {
public:
    using Error::Error;
};

/// A PDU received two or more photons on its pump input in some term.
class PumpOccupancyUnsupported : public Error {
public:
    using Error::Error;
};

/// A PDU tried to emit into a mode that already holds photons.
class PduOutputOccupied : public Error {
public:
    using Error::Error;
};

/// An element changed the state norm beyond tolerance.
class UnitarityViolation : public Error {
public:
    using Error::Error;
};

class InvalidNetlist : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// Zero denominator in a closed-form requirement (e.g. xi = 0).
class DivisionByZero : public Error {
public:
    using Error::Error;
};

/// Signal and idler effective indices coincide, so no SLM threshold exists.
class DegenerateIndices : public Error {
public:
    using Error::Error;
};

class OutOfValidityRange : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

}  // namespace pduforge
