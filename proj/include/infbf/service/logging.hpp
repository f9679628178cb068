#pragma once

namespace infbf::service {

/// Sets the spdlog level from INFBF_LOG_LEVEL (trace, debug, info, warn, error, off; default warn).
void init_logging();

}  // namespace infbf::service
