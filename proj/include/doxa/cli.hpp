#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace doxa
{

// Exit codes: 0 pass, 1 usage, I/O or format errors, 2 frame or postulate
// failures, 3 a formula outside the partial contraction domain.
namespace exit_code
{
inline constexpr int ok = 0;
inline constexpr int usage = 1;
inline constexpr int failed = 2;
inline constexpr int outside_domain = 3;
} // namespace exit_code

// `args` excludes the program name.
int run( const std::vector<std::string>& args, std::ostream& out, std::ostream& err );

} // namespace doxa
