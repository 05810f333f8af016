#!/usr/bin/python3

"""
Append-only text cache of central values.

Each line holds `q, psi_label, d, Re L, Im L, Lsq_formula, tol, clamped` as
CSV, with NaN for a value that was not computed and clamped as 0 or 1.
Rows written before the clamped column existed are read with clamped = 0.
The file is read once when the cache is opened and indexed by
(q, psi_label, d); a cached value is reused only if it was computed with a
tolerance at least as tight as the one requested. There is no locking, so
one process should write at a time.
"""
import csv
import logging
import os
from dataclasses import dataclass
from math import isnan, nan

from reslab.errors import InvalidInputError

logger = logging.getLogger(__name__)

HEADER = ['q', 'psi_label', 'd', 're_L', 'im_L', 'Lsq_formula', 'tol',
          'clamped']
LEGACY_HEADER = HEADER[:-1]


@dataclass(frozen=True)
class CacheEntry:
    q: int
    psi_label: str
    d: int
    value_oracle: complex
    value_sq_formula: float
    tol: float
    clamped: bool = False

    @property
    def key(self):
        return (self.q, self.psi_label, self.d)

    def to_row(self):
        oracle = self.value_oracle
        return [str(self.q), self.psi_label, str(self.d),
                _fmt(nan if oracle is None else oracle.real),
                _fmt(nan if oracle is None else oracle.imag),
                _fmt(nan if self.value_sq_formula is None
                     else self.value_sq_formula),
                _fmt(self.tol), '1' if self.clamped else '0']

    @classmethod
    def from_row(cls, row):
        """Parses one CSV row; raises ValueError when it is malformed."""
        if len(row) not in (len(LEGACY_HEADER), len(HEADER)):
            raise ValueError(f'expected {len(HEADER)} fields, got {len(row)}')
        q, label, d = int(row[0]), row[1].strip(), int(row[2])
        re_l, im_l, formula, tol = (float(cell) for cell in row[3:7])
        if not label or tol <= 0 or isnan(tol):
            raise ValueError('empty label or invalid tolerance')
        flag = row[7].strip() if len(row) == len(HEADER) else '0'
        if flag not in ('0', '1'):
            raise ValueError(f"clamped must be 0 or 1, got '{flag}'")
        oracle = None if isnan(re_l) or isnan(im_l) else complex(re_l, im_l)
        return cls(q, label, d, oracle, None if isnan(formula) else formula,
                   tol, flag == '1')


def _fmt(value):
    return '%.17g' % value


def _tighter(old, new, field):
    if getattr(new, field) is not None and (
            getattr(old, field) is None or new.tol <= old.tol):
        return new
    return old


def merge_entries(old, new):
    """
    Combines two entries for the same key field by field, keeping the value
    computed with the tighter tolerance. The clamped flag travels with the
    formula value. The merged tolerance is the looser of the two values
    kept.
    """
    if old is None:
        return new
    oracle = _tighter(old, new, 'value_oracle')
    formula = _tighter(old, new, 'value_sq_formula')
    tols = [source.tol for source, value in (
        (oracle, oracle.value_oracle), (formula, formula.value_sq_formula))
        if value is not None]
    return CacheEntry(new.q, new.psi_label, new.d, oracle.value_oracle,
                      formula.value_sq_formula,
                      max(tols) if tols else new.tol,
                      formula.value_sq_formula is not None
                      and formula.clamped)


class CentralValueCache:
    """
    The cache file and its in-memory index.

    Attributes:
        path (str): Location of the cache file.
        corrupt_lines (int): Lines skipped while loading.
    """

    def __init__(self, path):
        if not path:
            raise InvalidInputError('A cache path is required.')
        self.path = path
        self.corrupt_lines = 0
        self._index = {}
        self._load()

    def _load(self):
        if not os.path.exists(self.path):
            return
        with open(self.path, 'r', encoding='utf-8', errors='replace',
                  newline='') as data:
            for line_number, line in enumerate(data, start=1):
                try:
                    row = next(csv.reader([line]), [])
                    if not row or row in (HEADER, LEGACY_HEADER):
                        continue
                    entry = CacheEntry.from_row(row)
                except (ValueError, csv.Error) as e:
                    self.corrupt_lines += 1
                    logger.debug('Cache line %d skipped: %s', line_number, e)
                    continue
                self._index[entry.key] = merge_entries(
                    self._index.get(entry.key), entry)
        if self.corrupt_lines:
            logger.warning('Skipped %d corrupt line(s) in cache %s',
                           self.corrupt_lines, self.path)
        logger.info('Loaded %d cached central value(s) from %s',
                    len(self._index), self.path)

    def __len__(self):
        return len(self._index)

    def entries(self):
        return list(self._index.values())

    def lookup(self, q, psi_label, d, tol, need_oracle=True,
               need_formula=True):
        """
        Returns the cached entry when it covers the request, else None.
        """
        entry = self._index.get((q, psi_label, d))
        if entry is None or entry.tol > tol:
            return None
        if need_oracle and entry.value_oracle is None:
            return None
        if need_formula and entry.value_sq_formula is None:
            return None
        return entry

    def append(self, entry):
        """Writes one entry to the end of the file and indexes it."""
        new_file = not os.path.exists(self.path) or \
            os.path.getsize(self.path) == 0
        with open(self.path, 'a', encoding='utf-8', newline='') as data:
            writer = csv.writer(data)
            if new_file:
                writer.writerow(HEADER)
            writer.writerow(entry.to_row())
        self._index[entry.key] = merge_entries(
            self._index.get(entry.key), entry)
