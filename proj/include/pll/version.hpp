#pragma once

namespace pll {

// Library version embedded in experiment reports for provenance.
inline constexpr const char* kLibraryVersion = "0.1.0";

}  // namespace pll
