"""Published reference outputs for the bundled example tables."""

# grouped fixtures: ANOVA rows (sum sq, mean sq) and F/p; TK adjusted p values per row
ANOVA_1A = {"ss_tr": 7159.763, "sse": 28446.164, "ms_tr": 3579.881, "mse": 1053.562,
            "f_stat": 3.39789, "p_value": 0.04828}
TK_1A = {"diff": (34.696519918, 30.427939620, -4.268580298),
         "lwr": (-1.294542536, -5.563122834, -40.259642752),
         "upr": (70.68758237, 66.41900207, 31.72248216),
         "p_adj": (0.0604457982, 0.1095211230, 0.9535328433)}
ANOVA_2A = {"ss_tr": 4948.742, "sse": 20825.208, "ms_tr": 2474.371, "mse": 771.304,
            "f_stat": 3.20804, "p_value": 0.056236}
TK_2A = {"p_adj": (0.7017162217, 0.0496248072, 0.2327921189),
         "abs_diff": (10.0283214, 30.8382946, 20.8099732)}
ANOVA_2A_13 = {"ss_tr": 4755.002, "sse": 14161.164, "ms_tr": 4755.002, "mse": 786.731,
               "f_stat": 6.044, "p_value": 0.024315}
MODIFIED_TK_2A_13 = {"diff": 30.8382946, "lwr": 4.484804399, "upr": 57.1917848, "p_adj": 0.024314834}

# regression fixtures: (estimate, std error, t, p) per term, then summary statistics
MLR = {
    "5A": {
        "coef": [(2.193398826, 0.12112005, 18.10929596, 3.87188e-07),
                 (-0.397578417, 0.173782994, -2.28778667, 0.055989888),
                 (-0.225853392, 0.196597153, -1.148813135, 0.288369425)],
        "residual_se": 0.321371159, "r_squared": 0.578426902, "adj_r_squared": 0.457977446,
        "f_stat": 4.802237548, "f_p_value": 0.048646893, "df": (2, 7),
    },
    "6A": {
        "coef": [(1.927174047, 0.094242869, 20.44901714, 1.67739e-07),
                 (-0.534309107, 0.266285323, -2.006528569, 0.084798865),
                 (0.478129512, 0.20172263, 2.37023239, 0.049589266)],
        "residual_se": 0.271926659, "r_squared": 0.445574672, "adj_r_squared": 0.287167435560639,
        "f_stat": 2.812842909, "f_p_value": 0.126896814, "df": (2, 7),
    },
    "7A": {
        "coef": [(1.8040579, 0.1149434, 15.69519, 1.0317e-06),
                 (-0.1814855, 0.1720305, -1.05496, 0.326488),
                 (0.5168505, 0.2013693, 2.56668, 0.037188)],
        "residual_se": 0.3324189, "r_squared": 0.486189, "adj_r_squared": 0.3393858,
        "f_stat": 3.311843, "f_p_value": 0.09723261, "df": (2, 7),
    },
    "7A-X1": {
        "coef": [(1.7797247, 0.1133974, 15.69458, 2.7117e-07),
                 (0.4157529, 0.1783505, 2.33110, 0.048079)],
        "residual_se": 0.3347572, "r_squared": 0.404497, "adj_r_squared": 0.330059,
        "f_stat": 5.434026, "f_p_value": 0.04807907, "df": (1, 8),
    },
}

# sign table of critical_ratio - k: (last k of the positive run from 3, first k of the negative run)
H_SIGN_RANGES = {0.005: (10, 14), 0.01: (10, 14), 0.025: (10, 13), 0.05: (10, 12),
                 0.1: (10, 12), 0.25: (10, 11), 0.5: (9, 10)}

MONOTONE_THRESHOLDS = {0.005: 7, 0.01: 5, 0.025: 4, 0.05: 3, 0.1: 2, 0.25: 1, 0.5: 1}
