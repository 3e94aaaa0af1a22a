"""JSON schemas for the machine-readable CLI outputs."""

BF_RESULT = {
    "type": "object",
    "required": ["holds", "level", "caps"],
    "properties": {
        "holds": {"type": "boolean"},
        "level": {"type": "integer", "minimum": 0},
        "caps": {
            "type": "object",
            "required": ["index", "tuple"],
            "properties": {
                "index": {"type": "integer", "minimum": 1},
                "tuple": {"type": "integer", "minimum": 1},
            },
        },
        "stable": {"type": "boolean"},
        "verdicts": {"type": "array", "items": {"type": "boolean"}},
        "witness": {"type": "object"},
    },
}

ISO_RESULT = {
    "type": "object",
    "required": ["holds", "method", "qualified"],
    "properties": {
        "holds": {"type": "boolean"},
        "method": {"type": "string"},
        "qualified": {"type": "boolean"},
        "level": {"type": "integer"},
        "ranks": {"type": "array"},
    },
}

CLASSIFY_RESULT = {
    "type": "object",
    "required": ["term", "rank", "upper_bound", "optimal", "simple"],
    "properties": {
        "term": {"type": "string"},
        "rank": {"type": "integer", "minimum": 0},
        "simple": {"type": "boolean"},
        "simple_type": {"type": "string"},
        "upper_bound": {"type": "string"},
        "optimal": {"type": ["boolean", "null"]},
        "rationale": {"type": "string"},
    },
}

SCOTT_RESULT = {
    "type": "object",
    "required": ["term", "blocks", "claimed_class", "formula"],
    "properties": {
        "term": {"type": "string"},
        "blocks": {"type": "array", "items": {"type": "string"}},
        "claimed_class": {"type": "string"},
        "formula": {"type": "object"},
    },
}

RUN_RESULT = {
    "type": "object",
    "required": ["kind", "stages", "elements", "order", "events"],
    "properties": {
        "kind": {"type": "string"},
        "stages": {"type": "integer", "minimum": 0},
        "elements": {"type": "array", "items": {"type": "string"}},
        "order": {"type": "array", "items": {"type": "string"}},
        "events": {"type": "array", "items": {"type": "object"}},
        "workers": {"type": "object"},
        "meta": {"type": "object"},
        "diagnosis": {"type": "object"},
    },
}

SCHEDULE_FILE = {
    "type": "object",
    "required": ["schedules"],
    "properties": {
        "schedules": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "properties": {
                    "finite": {"type": "array", "items": {"type": "integer"}},
                    "periodic": {
                        "type": "object",
                        "required": ["start", "period"],
                        "properties": {
                            "start": {"type": "integer", "minimum": 0},
                            "period": {"type": "integer", "minimum": 1},
                        },
                    },
                },
            },
        }
    },
}

TABLE_FILE = {
    "type": "object",
    "required": ["rows"],
    "properties": {
        "rows": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["n", "x", "y_rule"],
                "properties": {
                    "n": {"type": "integer", "minimum": 0},
                    "x": {"type": "integer", "minimum": 0},
                    "y_rule": {
                        "anyOf": [
                            {"enum": ["all", "none"]},
                            {
                                "type": "object",
                                "required": ["period", "holes"],
                                "properties": {
                                    "period": {"type": "integer", "minimum": 1},
                                    "holes": {"type": "array",
                                              "items": {"type": "integer"}},
                                },
                            },
                        ]
                    },
                },
            },
        }
    },
}
