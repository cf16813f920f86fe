#include "amhd/state.hpp"

namespace amhd {

State::State(double time, Field a_, Field u_, Field B_)
    : t(time), a(std::move(a_)), u(std::move(u_)), B(std::move(B_)) {
  require_rank(a.rank(), Rank::scalar, "state a");
  require_rank(u.rank(), Rank::vector, "state u");
  require_rank(B.rank(), Rank::vector, "state B");
  require_same_grid(a.grid(), u.grid(), "state");
  require_same_grid(a.grid(), B.grid(), "state");
}

}  // namespace amhd
