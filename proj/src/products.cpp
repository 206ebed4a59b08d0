#include "cohcorr/products.hpp"

namespace cohcorr {

double product(std::span<const double> values) {
  double result = 1.0;
  for (double v : values) result *= v;
  return result;
}

double one_minus_product(std::span<const double> values) {
  double sum = 0.0;
  double running = 1.0;
  for (double v : values) {
    sum += running * (1.0 - v);
    running *= v;
  }
  return sum;
}

}  // namespace cohcorr
