#include "mble/tableau.hpp"

#include <algorithm>
#include <cmath>

namespace mble {

ImexTableau ImexTableau::ssp3_333() {
  ImexTableau t;
  t.name = "SSP3(3,3,3)";
  t.stages = 3;
  t.a = {0.0, 0.0, 0.0,
         1.0, 0.0, 0.0,
         0.25, 0.25, 0.0};
  t.b = {1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0};
  t.c = {0.0, 1.0, 0.5};
  t.ai = {0.0, 0.0, 0.0,
          14.0 / 15.0, 1.0 / 15.0, 0.0,
          7.0 / 30.0, 1.0 / 5.0, 1.0 / 15.0};
  t.bi = {1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0};
  t.ci = {0.0, 1.0, 0.5};
  return t;
}

double OrderConditionReport::max() const { return std::max({row_sum, order1, order2, order3}); }

OrderConditionReport check_order_conditions(const ImexTableau& t) {
  const int s = t.stages;
  OrderConditionReport r;
  const std::vector<double>* as[2] = {&t.a, &t.ai};
  const std::vector<double>* bs[2] = {&t.b, &t.bi};
  const std::vector<double>* cs[2] = {&t.c, &t.ci};
  for (int p = 0; p < 2; ++p)
    for (int i = 0; i < s; ++i) {
      double sum = 0.0;
      for (int j = 0; j < s; ++j) sum += (*as[p])[i * s + j];
      r.row_sum = std::max(r.row_sum, std::abs(sum - (*cs[p])[i]));
    }
  // Every combination of parts must satisfy the additive conditions.
  for (int p = 0; p < 2; ++p) {
    const auto& b = *bs[p];
    double s1 = 0.0;
    for (int i = 0; i < s; ++i) s1 += b[i];
    r.order1 = std::max(r.order1, std::abs(s1 - 1.0));
    for (int q = 0; q < 2; ++q) {
      const auto& c = *cs[q];
      double s2 = 0.0;
      for (int i = 0; i < s; ++i) s2 += b[i] * c[i];
      r.order2 = std::max(r.order2, std::abs(s2 - 0.5));
      for (int m = 0; m < 2; ++m) {
        const auto& c2 = *cs[m];
        double s3 = 0.0;
        for (int i = 0; i < s; ++i) s3 += b[i] * c[i] * c2[i];
        r.order3 = std::max(r.order3, std::abs(s3 - 1.0 / 3.0));
        const auto& a = *as[q];
        double s4 = 0.0;
        for (int i = 0; i < s; ++i)
          for (int j = 0; j < s; ++j) s4 += b[i] * a[i * s + j] * c2[j];
        r.order3 = std::max(r.order3, std::abs(s4 - 1.0 / 6.0));
      }
    }
  }
  return r;
}

}  // namespace mble
