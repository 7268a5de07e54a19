"""JSON Schemas (draft 2020-12) for CLI input and output documents."""

_number = {"type": "number"}
_nullable_number = {"type": ["number", "null"]}
_probability = {"type": "number", "minimum": 0, "maximum": 1}

DISTRIBUTION = {
    "type": "object",
    "required": ["family", "location", "scale"],
    "additionalProperties": False,
    "properties": {
        "family": {"enum": ["normal", "cauchy", "laplace"]},
        "location": _number,
        "scale": {"type": "number", "exclusiveMinimum": 0},
    },
}

POPULATION_MODEL = {
    "type": "object",
    "required": ["subpopulations"],
    "properties": {
        "subpopulations": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["label", "size", "dist"],
                "properties": {
                    "label": {"type": "string", "minLength": 1},
                    "size": {"type": "number", "exclusiveMinimum": 0},
                    "dist": DISTRIBUTION,
                },
            },
        }
    },
}

DISTRIBUTION_LIST = {
    "type": "object",
    "required": ["distributions"],
    "properties": {"distributions": {"type": "array", "items": DISTRIBUTION}},
}

_share_report = {
    "type": "object",
    "required": ["cutoff", "top_fraction", "dominant_label", "groups"],
    "additionalProperties": False,
    "properties": {
        "cutoff": _number,
        "top_fraction": _nullable_number,
        "dominant_label": {"type": "string"},
        "groups": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["label", "tail_mass", "log_tail_mass", "share"],
                "additionalProperties": False,
                "properties": {
                    "label": {"type": "string"},
                    "tail_mass": {"type": "number", "minimum": 0},
                    "log_tail_mass": _nullable_number,
                    "share": _probability,
                },
            },
        },
    },
}

REPORTS = {
    "intersect": {
        "type": "object",
        "required": ["points"],
        "additionalProperties": False,
        "properties": {"points": {"type": "array", "minItems": 1, "maxItems": 2, "items": _number}},
    },
    "classify": {
        "type": "object",
        "required": ["first", "second", "verdict", "tail", "alpha", "description"],
        "additionalProperties": False,
        "properties": {
            "first": DISTRIBUTION,
            "second": DISTRIBUTION,
            "verdict": {
                "enum": ["first_strongly_dominates", "second_strongly_dominates", "finite_ratio"]
            },
            "tail": {"enum": ["right", "left"]},
            "alpha": _nullable_number,
            "description": {"type": "string"},
        },
    },
    "dominator": {
        "type": "object",
        "required": ["index", "label", "dist"],
        "additionalProperties": False,
        "properties": {
            "index": {"type": "integer", "minimum": 0},
            "label": {"type": ["string", "null"]},
            "dist": DISTRIBUTION,
        },
    },
    "tail-share": _share_report,
    "shares": _share_report,
    "cutoff": {
        "type": "object",
        "required": ["top_fraction", "cutoff"],
        "additionalProperties": False,
        "properties": {"top_fraction": _probability, "cutoff": _number},
    },
    "ranges": {
        "type": "object",
        "required": ["rows"],
        "additionalProperties": False,
        "properties": {
            "rows": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["range_low", "range_high", "mass_1", "mass_2", "ratio", "adjusted_ratio"],
                    "additionalProperties": False,
                    "properties": {
                        "range_low": _number,
                        # null encodes the open final range
                        "range_high": _nullable_number,
                        "mass_1": {"type": "number", "minimum": 0},
                        "mass_2": {"type": "number", "minimum": 0},
                        "ratio": _nullable_number,
                        "adjusted_ratio": _nullable_number,
                    },
                },
            }
        },
    },
    "rules": {
        "type": "object",
        "required": ["family", "within_1", "within_2", "within_3"],
        "additionalProperties": False,
        "properties": {
            "family": {"enum": ["normal", "cauchy", "laplace"]},
            "within_1": _probability,
            "within_2": _probability,
            "within_3": _probability,
        },
    },
    "trace": {
        "type": "object",
        "required": ["tail", "points"],
        "additionalProperties": False,
        "properties": {
            "tail": {"enum": ["right", "left"]},
            "points": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["cutoff", "ratio", "log_ratio"],
                    "additionalProperties": False,
                    "properties": {
                        "cutoff": _number,
                        "ratio": _nullable_number,
                        "log_ratio": _nullable_number,
                    },
                },
            },
        },
    },
    "simulate": {
        "type": "object",
        "required": [
            "cutoff", "seed", "samples_per_unit_size", "total_exceedances", "groups", "no_exceedances",
        ],
        "additionalProperties": False,
        "properties": {
            "cutoff": _number,
            "seed": {"type": "integer"},
            "samples_per_unit_size": {"type": "integer", "minimum": 1},
            "total_exceedances": {"type": "integer", "minimum": 0},
            "no_exceedances": {"type": "boolean"},
            "groups": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["label", "samples", "exceedances", "share", "stderr"],
                    "additionalProperties": False,
                    "properties": {
                        "label": {"type": "string"},
                        "samples": {"type": "integer", "minimum": 0},
                        "exceedances": {"type": "integer", "minimum": 0},
                        "share": _nullable_number,
                        "stderr": _nullable_number,
                    },
                },
            },
        },
    },
}
