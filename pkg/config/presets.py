"""
Preset Cartan data with diagram involution.

Each preset exercises one hypothesis class on c_{1, tau 1}:
  a1xa1-swap : 0     a2-swap : -1     a1aff-swap : -2     a3-tau13 : 0
"""

PRESETS = {
    "a1xa1-swap": {
        "name": "a1xa1-swap",
        "cartan": [[2, 0], [0, 2]],
        "symmetrizer": [1, 1],
        "tau": [2, 1],
    },
    "a2-swap": {
        "name": "a2-swap",
        "cartan": [[2, -1], [-1, 2]],
        "symmetrizer": [1, 1],
        "tau": [2, 1],
    },
    "a1aff-swap": {
        "name": "a1aff-swap",
        "cartan": [[2, -2], [-2, 2]],
        "symmetrizer": [1, 1],
        "tau": [2, 1],
    },
    "a3-tau13": {
        "name": "a3-tau13",
        "cartan": [[2, -1, 0], [-1, 2, -1], [0, -1, 2]],
        "symmetrizer": [1, 1, 1],
        "tau": [3, 2, 1],
    },
}

# Presets the acceptance runs sweep over, in catalogue order.
ACCEPTANCE_PRESETS = ["a1xa1-swap", "a2-swap", "a1aff-swap", "a3-tau13"]
