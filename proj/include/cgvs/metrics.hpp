#pragma once

#include <vector>

#include "cgvs/mask.hpp"
#include "cgvs/raster.hpp"

namespace cgvs {

struct FixationPoint {
    int x = 0, y = 0;
};

struct FixationSet {
    std::vector<FixationPoint> points;
};

/// One sweep point. ROC: x = false positive rate, y = true positive rate.
/// P-R: x = recall, y = precision.
struct CurveSample {
    double threshold = 0.0;
    double x = 0.0;
    double y = 0.0;
};

struct CurveReport {
    std::vector<CurveSample> samples;  // thresholds decreasing in coverage order
    double summary = 0.0;              // AUC, or the best F over the sweep
};

/// ROC against fixation points. Positives are the saliency values at the
/// fixation points, negatives the values everywhere else; the AUC summary is
/// the Mann-Whitney statistic (ties credit 0.5).
CurveReport roc_auc(const Raster& sal, const FixationSet& fix);

/// Precision/recall over 256 uniform thresholds with
/// F = (1+beta2) P R / (beta2 P + R); summary is the maximum F.
CurveReport pr_fscore(const Raster& sal, const Mask& gt_mask, double beta2 = 0.3);

/// Weighted F-score: per-pixel errors weighted by foreground dependency
/// (Gaussian-propagated through the nearest-foreground assignment) and by an
/// importance term decaying with distance from the foreground; beta = 1.
/// With apply_weighting = false both weightings are unit and the measure
/// reduces to a continuous F1.
double weighted_fscore(const Raster& sal, const Mask& gt_mask,
                       bool apply_weighting = true);

/// Mean absolute per-pixel difference against the binary mask.
double mae(const Raster& sal, const Mask& gt_mask);

/// Exact squared Euclidean distance transform of the foreground. For every
/// pixel, dist2 gets the squared distance to the nearest foreground pixel
/// (0 on the foreground itself) and nearest_index its row-major index; ties
/// resolve to the lexicographically smallest (dist2, source x, source y).
/// nearest_index is -1 when the mask has no foreground at all.
void distance_transform(const Mask& fg, Raster& dist2, std::vector<int>& nearest_index);

}  // namespace cgvs
