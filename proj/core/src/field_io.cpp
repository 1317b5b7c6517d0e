#include "phasebound/field_io.hpp"

#include <fstream>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "phasebound/errors.hpp"

namespace phasebound {

namespace {

using nlohmann::json;

json field_to_json(const GridSpec& grid, const std::vector<cplx>& values,
                   const std::optional<SupportMask>& mask, const char* kind) {
  json doc;
  doc["version"] = 1;
  doc["kind"] = kind;
  doc["n"] = grid.dim();
  doc["dims"] = grid.dims();
  doc["spacing"] = grid.spacing();
  std::vector<double> re(values.size()), im(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    re[i] = values[i].real();
    im[i] = values[i].imag();
  }
  doc["re"] = std::move(re);
  doc["im"] = std::move(im);
  if (mask) {
    std::vector<int> bits(mask->bits().begin(), mask->bits().end());
    doc["mask"] = std::move(bits);
  }
  return doc;
}

struct ParsedField {
  GridSpec grid;
  std::vector<cplx> values;
  std::optional<SupportMask> mask;
};

ParsedField parse_field(const std::string& text, const char* expected_kind) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw IoError(std::string("FLD-JSON: parse failure: ") + e.what());
  }
  try {
    if (!doc.contains("version") || doc["version"].get<int>() != 1) {
      throw IoError("FLD-JSON: unknown or missing version");
    }
    const std::string kind = doc.at("kind").get<std::string>();
    if (kind != expected_kind) {
      throw IoError("FLD-JSON: expected kind '" + std::string(expected_kind) + "', found '" +
                    kind + "'");
    }
    const int n = doc.at("n").get<int>();
    auto dims = doc.at("dims").get<std::vector<int>>();
    if (static_cast<int>(dims.size()) != n) {
      throw IoError("FLD-JSON: dims length does not match n");
    }
    GridSpec grid(std::move(dims), doc.at("spacing").get<double>());
    const auto re = doc.at("re").get<std::vector<double>>();
    const auto im = doc.at("im").get<std::vector<double>>();
    if (re.size() != grid.size() || im.size() != grid.size()) {
      throw IoError("FLD-JSON: re/im length does not match the grid size");
    }
    std::vector<cplx> values(grid.size());
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = cplx(re[i], im[i]);
    std::optional<SupportMask> mask;
    if (doc.contains("mask")) {
      const auto bits = doc["mask"].get<std::vector<int>>();
      if (bits.size() != grid.size()) {
        throw IoError("FLD-JSON: mask length does not match the grid size");
      }
      std::vector<std::uint8_t> raw(bits.size());
      for (std::size_t i = 0; i < bits.size(); ++i) raw[i] = bits[i] ? 1 : 0;
      mask = SupportMask(grid, std::move(raw));
    }
    return {std::move(grid), std::move(values), std::move(mask)};
  } catch (const json::exception& e) {
    throw IoError(std::string("FLD-JSON: malformed document: ") + e.what());
  } catch (const ParameterError& e) {
    throw IoError(std::string("FLD-JSON: invalid grid: ") + e.what());
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text << '\n';
  if (!out) throw IoError("write failure on '" + path + "'");
}

}  // namespace

std::string to_fld_json(const SampledField& f) {
  return field_to_json(f.grid(), f.values(), f.declared_mask(), "sampled").dump();
}

std::string to_fld_json(const SpectralField& F) {
  return field_to_json(F.grid(), F.values(), F.declared_mask(), "spectral").dump();
}

SampledField sampled_from_fld_json(const std::string& text) {
  ParsedField parsed = parse_field(text, "sampled");
  SampledField f(std::move(parsed.grid), std::move(parsed.values));
  f.set_declared_mask(std::move(parsed.mask));
  return f;
}

SpectralField spectral_from_fld_json(const std::string& text) {
  ParsedField parsed = parse_field(text, "spectral");
  SpectralField F(std::move(parsed.grid), std::move(parsed.values));
  F.set_declared_mask(std::move(parsed.mask));
  return F;
}

void write_sampled_field(const std::string& path, const SampledField& f) {
  spill(path, to_fld_json(f));
}

void write_spectral_field(const std::string& path, const SpectralField& F) {
  spill(path, to_fld_json(F));
}

SampledField read_sampled_field(const std::string& path) {
  return sampled_from_fld_json(slurp(path));
}

SpectralField read_spectral_field(const std::string& path) {
  return spectral_from_fld_json(slurp(path));
}

}  // namespace phasebound
