#!/usr/bin/python3

"""
Serialization of results: JSON documents, JSON-lines report streams and
CSV summaries. CSV goes through pandas with 17 significant digits; NaN and
infinities become null in JSON.
"""
import json
from math import isfinite

import pandas as pd

FLOAT_FORMAT = '%.17g'


def clean(value):
    """Turns a result structure into plain JSON-compatible values."""
    if isinstance(value, dict):
        return {str(k): clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [clean(v) for v in value]
    if isinstance(value, complex):
        return {'re': clean(value.real), 'im': clean(value.imag)}
    if hasattr(value, 'item') and not isinstance(value, (str, bytes)):
        value = value.item()
    if isinstance(value, float) and not isfinite(value):
        return None
    return value


def dumps_json(data):
    """An indented JSON document followed by a newline."""
    return json.dumps(clean(data), indent=4) + '\n'


def reports_to_jsonl(reports):
    """One compact JSON object per report, one per line."""
    return ''.join(json.dumps(clean(report.to_dict()), sort_keys=True) + '\n'
                   for report in reports)


def rows_to_csv(rows, columns=None):
    """A list of flat dictionaries as CSV text with a header row."""
    frame = pd.DataFrame(rows, columns=columns)
    return frame.to_csv(index=False, float_format=FLOAT_FORMAT)


def reports_to_frame(reports):
    """The report fields as a DataFrame; parameters stay JSON text."""
    rows = []
    for report in reports:
        row = report.to_dict()
        row['parameters'] = json.dumps(clean(row['parameters']),
                                       sort_keys=True)
        row['tolerance'] = json.dumps(clean(row['tolerance']))
        rows.append(row)
    columns = ['name', 'observed', 'predicted', 'ratio', 'gate', 'tolerance',
               'pass', 'runtime_ms', 'off_paper_regime', 'parameters']
    return pd.DataFrame(rows, columns=columns)


def reports_to_csv(reports):
    return reports_to_frame(reports).to_csv(index=False,
                                            float_format=FLOAT_FORMAT)
