#pragma once

#include <filesystem>

#include "vlcn/cae/model.hpp"

namespace vlcn::cae {

/// Binary model container, version 1: magic "VLCNCAE\n", u32 format version,
/// length-prefixed JSON header (architecture, init seed, epochs seen), then
/// per layer in declared order a length-prefixed block of 64-bit
/// little-endian weights followed by one of biases. save/load round-trips
/// every parameter bit-exactly.
void save_model(const CaeModel& model, const std::filesystem::path& path);

[[nodiscard]] CaeModel load_model(const std::filesystem::path& path);

}  // namespace vlcn::cae
