#include <algorithm>
#include <numeric>

#include "mckc/pipeline.hpp"

namespace mckc {

TransferResult transfer_capacities(const std::vector<Rat>& values,
                                   const std::vector<std::int64_t>& s,
                                   const std::vector<Rat>& y_masses,
                                   const std::vector<std::int64_t>& k) {
  const int P = int(values.size());
  if (int(s.size()) != P || int(y_masses.size()) != P || int(k.size()) != P)
    throw std::invalid_argument("transfer_capacities: length mismatch");
  for (int p = 0; p + 1 < P; ++p)
    if (!(values[p] < values[p + 1]))
      throw std::invalid_argument("transfer_capacities: values must be strictly ascending");

  // Precondition (roundable condition 1): suffix s within floor of suffix y.
  {
    std::int64_t ssuf = 0;
    Rat ysuf(0);
    for (int p = P - 1; p >= 0; --p) {
      ssuf += s[p];
      ysuf += y_masses[p];
      if (ssuf > ysuf.floor())
        throw std::logic_error("transfer_capacities: suffix precondition violated at " +
                               std::to_string(p));
    }
  }

  TransferResult out;
  out.s_tilde.assign(P, 0);
  out.t_residual.assign(P, 0);
  Rat suffix(0);
  std::int64_t floor_above = 0;
  for (int p = P - 1; p >= 0; --p) {
    suffix += y_masses[p];
    std::int64_t fl = suffix.floor();
    out.s_tilde[p] = fl - floor_above;
    floor_above = fl;
    if (out.s_tilde[p] > k[p])
      throw std::logic_error("transfer_capacities: s~ exceeds k at entry " + std::to_string(p) +
                             " (needs y_p <= k_p)");
    out.t_residual[p] = k[p] - out.s_tilde[p];
  }

  // Upgrade: expand slots largest-first; each takes the largest remaining
  // s~ entry, which by the suffix inequality is always >= its own value.
  std::vector<std::int64_t> avail = out.s_tilde;
  int cursor = P - 1;
  for (int p = P - 1; p >= 0; --p)
    for (std::int64_t c = 0; c < s[p]; ++c) {
      while (cursor >= 0 && avail[cursor] == 0) --cursor;
      if (cursor < p)
        throw std::logic_error("transfer_capacities: upgrade ran out of capacity");
      --avail[cursor];
      out.upgrade.push_back(cursor);
    }
  return out;
}

}  // namespace mckc
