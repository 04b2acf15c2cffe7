#pragma once

#include <sstream>

#include "darm/dataset.hpp"

namespace fixtures {

// Items A..E as ids 1..5, the way a FIMI file would carry them.
inline constexpr darm::Item A = 1, B = 2, C = 3, D = 4, E = 5;

// {ABC, ABDE, ACE}
inline darm::TransactionDb shop_db() {
  std::istringstream in("1 2 3\n1 2 4 5\n1 3 5\n");
  return darm::load_fimi(in);
}

// Same three transactions with A..E as ids 0..4.
inline darm::TransactionDb shop_db_zero_based() {
  return darm::TransactionDb({{0, 1, 2}, {0, 1, 3, 4}, {0, 2, 4}}, 5);
}

}  // namespace fixtures
