#pragma once

namespace bellscope {

/// Reported in machine-readable output; bump on schema changes.
const char* version();

}  // namespace bellscope
