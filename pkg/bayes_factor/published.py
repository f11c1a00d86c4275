"""
Published reference numbers the `reproduce` command compares against.

Sample size 200, threshold 0.07, canonical ordering; reference values are the
exact one-sided binomial Bayes factor rounded to three decimals.
"""

from typing import Dict, Tuple

SAMPLE_SIZE = 200

# successes -> (frequency, sequential BF10, reference BF10)
COMPARISON: Dict[int, Tuple[float, float, float]] = {
    10: (0.05, 27.85714, 0.005),
    20: (0.1, 15.83333, 0.006),
    30: (0.15, 10.22222, 0.007),
    40: (0.2, 7.416667, 0.008),
    50: (0.25, 5.733333, 0.01),
    60: (0.3, 4.771429, 0.012),
    70: (0.35, 3.926829, 0.016),
    80: (0.4, 3.297872, 0.022),
    90: (0.45, 3.590909, 0.037),
    100: (0.5, 6.769231, 0.084),
    102: (0.51, 7.782609, 0.106),
    105: (0.525, 10.88235, 0.16),
    107: (0.535, 13.42857, 0.222),
    110: (0.55, 21.44444, 0.398),
}

# frequency -> corrected sequential BF10
CORRECTED: Dict[float, float] = {
    0.15: -0.00946,
    0.2: 0.00831,
    0.25: 0.008857,
    0.3: 0.02209,
    0.35: 0.031817,
    0.4: 0.047038,
    0.45: 0.068992,
    0.5: 0.133632,
    0.51: 0.165269,
    0.525: 0.289614,
    0.535: 0.41727,
    0.55: 1.494681,
}

# corrected column against the reference column
TTEST = {
    'levene_f': 3.020,
    'levene_p': 0.096,
    'pooled_t': 1.053,
    'pooled_df': 22,
    'pooled_p': 0.304,
    'welch_df': 12.756,
    'welch_p': 0.312,
    'mean_diff': 0.13300950,
    'se': 0.12627344,
    'pooled_ci95_lo': -0.128866,
    'pooled_ci95_hi': 0.39488459,
    'welch_ci95_lo': -0.140320,
    'welch_ci95_hi': 0.40633866,
}

# n -> (successes, reference BF10) at the proportion 0.57
SCAN_PROPORTION = 0.57
SCAN: Dict[int, Tuple[int, float]] = {
    300: (171, 2.381),
    325: (185, 2.736),
    350: (200, 4.163),
    400: (228, 5.545),
    450: (257, 9.843),
    500: (285, 13.281),
    1000: (570, 1282.612),
    2000: (1140, 1.689e7),
}


def corrected_pairs():
    """(corrected, reference) columns aligned on frequency"""
    reference = {frequency: jasp for frequency, _, jasp in COMPARISON.values()}
    frequencies = sorted(CORRECTED)
    return [CORRECTED[x] for x in frequencies], [reference[x] for x in frequencies]
