#ifndef PFREE_VERSION_HPP_
#define PFREE_VERSION_HPP_

#include <string_view>

namespace pfree {

  inline constexpr std::string_view version = "0.1.0";

}  // namespace pfree

#endif  // PFREE_VERSION_HPP_
