#pragma once

namespace hoelderlab::cli {

/// Exit codes: 0 success, 1 invalid configuration or arguments, 2 computation failure.
int run(int argc, char** argv);

}  // namespace hoelderlab::cli
