"""Append-only JSON-lines store of splitting fingerprints."""

import json
import logging
import os
import tempfile

from .equivalence import Fingerprint

log = logging.getLogger(__name__)

VERSION = 1


class FingerprintCache:
    def __init__(self, path):
        self.path = os.fspath(path)

    def _lines(self):
        if not os.path.exists(self.path):
            return []
        with open(self.path, encoding="utf-8") as fh:
            return fh.read().splitlines()

    def entries(self):
        out = []
        for lineno, line in enumerate(self._lines(), 1):
            if not line.strip():
                continue
            try:
                d = json.loads(line)
                if d.get("version") != VERSION:
                    raise ValueError(f"unsupported version {d.get('version')!r}")
                out.append(Fingerprint.from_dict(d))
            except (ValueError, KeyError, TypeError) as exc:
                log.warning("skipping corrupt cache line %d in %s: %s", lineno, self.path, exc)
        return out

    def get(self, poly, bound):
        """Newest stored fingerprint for ``poly`` covering ``bound``, truncated to it."""
        poly = list(poly)
        for fp in reversed(self.entries()):
            if fp.poly == poly and fp.bound >= bound:
                return fp.truncated(bound)
        return None

    def put(self, fp):
        record = dict(fp.as_dict(), version=VERSION)
        line = json.dumps(record, separators=(",", ":"))
        old = "\n".join(self._lines())
        directory = os.path.dirname(os.path.abspath(self.path))
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".nfk-cache-")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                if old:
                    fh.write(old + "\n")
                fh.write(line + "\n")
            os.replace(tmp, self.path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
