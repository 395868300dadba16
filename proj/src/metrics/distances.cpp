#include "revised/metrics/distances.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "revised/errors.hpp"

namespace revised::metrics {

Norms norms(const EncodedTrace& factual, const EncodedTrace& cf) {
  if (!factual.m.same_shape(cf.m)) throw ArgumentError("norms: shape mismatch");
  Norms n;
  double l2sq = 0.0;
  for (std::size_t i = 0; i < factual.m.size(); ++i) {
    const double d = factual.m.d[i] - cf.m.d[i];
    if (d != 0.0) n.l0 += 1.0;
    n.l1 += std::fabs(d);
    l2sq += d * d;
  }
  n.l2 = std::sqrt(l2sq);
  return n;
}

double emd(std::span<const ActivityId> a, std::span<const ActivityId> b, ActivityId eos) {
  std::map<ActivityId, double> ha, hb;
  double na = 0.0, nb = 0.0;
  for (ActivityId x : a) {
    if (x == eos) continue;
    ha[x] += 1.0;
    na += 1.0;
  }
  for (ActivityId x : b) {
    if (x == eos) continue;
    hb[x] += 1.0;
    nb += 1.0;
  }
  if (na == 0.0 && nb == 0.0) return 0.0;
  if (na == 0.0 || nb == 0.0) return 1.0;  // all mass moves

  double tv = 0.0;
  auto ia = ha.begin();
  auto ib = hb.begin();
  while (ia != ha.end() || ib != hb.end()) {
    if (ib == hb.end() || (ia != ha.end() && ia->first < ib->first)) {
      tv += ia->second / na;
      ++ia;
    } else if (ia == ha.end() || ib->first < ia->first) {
      tv += ib->second / nb;
      ++ib;
    } else {
      tv += std::fabs(ia->second / na - ib->second / nb);
      ++ia;
      ++ib;
    }
  }
  return 0.5 * tv;
}

double emd(const Trace& a, const Trace& b, ActivityId eos) {
  return emd(std::span<const ActivityId>(a.activities),
             std::span<const ActivityId>(b.activities), eos);
}

std::size_t dl_edit(std::span<const ActivityId> a, std::span<const ActivityId> b) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  std::vector<std::vector<std::size_t>> d(n + 1, std::vector<std::size_t>(m + 1, 0));
  for (std::size_t i = 0; i <= n; ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= m; ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
      std::size_t best = std::min({d[i - 1][j] + 1,        // delete
                                   d[i][j - 1] + 1,        // insert
                                   d[i - 1][j - 1] + cost});  // substitute
      if (i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1]) {
        best = std::min(best, d[i - 2][j - 2] + 1);  // adjacent transposition
      }
      d[i][j] = best;
    }
  }
  return d[n][m];
}

std::size_t lcp(std::span<const ActivityId> a, std::span<const ActivityId> b) {
  const std::size_t n = std::min(a.size(), b.size());
  std::size_t i = 0;
  while (i < n && a[i] == b[i]) ++i;
  return i;
}

}  // namespace revised::metrics
