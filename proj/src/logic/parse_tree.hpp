#pragma once

#include "doxa/logic.hpp"

#include <string_view>

namespace doxa::detail
{

// With `modal` set, '>' (conditional, loosest binding) and the prefix
// operator 'B' are accepted as well. The identifier `B` is then reserved.
node_ptr parse_tree( std::string_view text, const signature& sig, bool modal );

} // namespace doxa::detail
