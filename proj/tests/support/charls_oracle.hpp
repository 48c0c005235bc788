#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "agcr/backend.hpp"

// Optional runtime binding to the system CharLS library, used as an
// independent JPEG-LS implementation. Loaded with dlopen so the build does
// not depend on its headers.
namespace fixtures::charls {

bool available();
std::optional<std::vector<std::uint8_t>> encode(const agcr::ImagePlane& img);
std::optional<agcr::ImagePlane> decode(const std::vector<std::uint8_t>& data);

}  // namespace fixtures::charls
