#pragma once

#include <string>

#include "phasebound/field.hpp"

namespace phasebound {

/// FLD-JSON v1: a single JSON document
///   {"version":1, "kind":"sampled"|"spectral", "n":int, "dims":[...],
///    "spacing":float, "re":[...], "im":[...]}
/// with row-major arrays and an optional "mask":[0/1,...] carrying a
/// declared support. Readers reject unknown versions and mismatched array
/// lengths. Doubles round-trip bitwise.
std::string to_fld_json(const SampledField& f);
std::string to_fld_json(const SpectralField& F);

SampledField sampled_from_fld_json(const std::string& text);
SpectralField spectral_from_fld_json(const std::string& text);

void write_sampled_field(const std::string& path, const SampledField& f);
void write_spectral_field(const std::string& path, const SpectralField& F);
SampledField read_sampled_field(const std::string& path);
SpectralField read_spectral_field(const std::string& path);

}  // namespace phasebound
