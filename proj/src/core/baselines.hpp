#pragma once

#include <string_view>

namespace grk::detail {

// Raw CSV text of the reference tables under data/.
std::string_view table1_baseline();
std::string_view table2_baseline();
std::string_view table3_baseline();

}  // namespace grk::detail
