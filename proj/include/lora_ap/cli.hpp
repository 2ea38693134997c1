#pragma once

#include <iosfwd>

namespace lora_ap {

// Exit codes: 0 success, 1 runtime/scenario/check failure, 2 bad arguments.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lora_ap
