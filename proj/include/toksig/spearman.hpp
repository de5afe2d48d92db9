#pragma once

#include <span>
#include <vector>

#include "toksig/common.hpp"

namespace toksig::signature {

/// Average (fractional) 1-based ranks: ties receive the mean of the rank
/// positions they occupy.
std::vector<double> average_ranks(std::span<const double> v);

/// Tie-corrected Spearman rank correlation: Pearson correlation of the
/// average-ranked inputs. Without ties this reduces exactly to the classic
/// 1 - 6*sum(d^2)/(n(n^2-1)) closed form, which is also the code path taken,
/// so perfectly monotone inputs yield exactly +/-1.
///
/// Throws toksig::error on length mismatch or length < 2, and
/// toksig::undefined_correlation when either input is constant.
double spearman(std::span<const double> x, std::span<const double> y);

}  // namespace toksig::signature
