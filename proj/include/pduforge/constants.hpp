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

/// CODATA 2018 values, SI units. Every formula reads its constants from here.
namespace pduforge::constants {

inline constexpr double speed_of_light = 299792458.0;          // m s^-1 (exact)
inline constexpr double reduced_planck = 1.054571817e-34;      // J s (exact via h)
inline constexpr double vacuum_permittivity = 8.8541878128e-12;  // F m^-1
inline constexpr double vacuum_permeability = 1.25663706212e-6;  // N A^-2

}  // namespace pduforge::constants
