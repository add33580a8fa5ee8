"""Regression bounds written by scripts/freeze_constants.py; do not edit by hand."""

SAMPLES = 1000000
ALPHA = 0.5
TJ_LEVELS = (2, 3)
TJ_STRIDE = 8
MEASURED = {'defect_gamma_max': 37.536714986115626,
 'menger_defect_max': 31.999804465772733,
 'smoothness_max': {2: 2.01320914220873, 8: 2.0060212169047986},
 'tj_beta_max': 0.01581225461516111}

SMOOTHNESS_BOUND = {2: 4.02641828441746, 8: 4.012042433809597}
DEFECT_GAMMA_BOUND = 75.07342997223125
MENGER_DEFECT_BOUND = 63.99960893154547
TJ_BETA_BOUND = 0.03162450923032222
CUBE_BOUNDS = {'horizontal_segment': {'d3_floor': 0.1095890410958904,
                        'mass_band': (0.18786692759295498, 2.0)},
 'lifted_circle': {'d3_floor': 0.09836447272270335,
                   'mass_band': (0.1721409788019875, 3.1415728631362723)},
 'lifted_zigzag': {'d3_floor': 0.055664274842362006,
                   'mass_band': (0.11132854968471476, 3.3676886279625995)}}
