"""Minimal cached client for published dimensions of weight-3 Gamma_1(N) spaces."""
from __future__ import annotations

import hashlib
import json
import urllib.error
import urllib.parse
import urllib.request
from pathlib import Path

from .errors import EmsurfError

API_ROOT = "https://www.lmfdb.org/api"


class SourceUnavailable(EmsurfError):
    """Network failure or offline cache miss; distinct from a dimension mismatch."""


class LmfdbClient:
    def __init__(self, cache_dir: Path | None, offline: bool = False, timeout: float = 20.0):
        self.cache_dir = Path(cache_dir) if cache_dir is not None else None
        self.offline = offline
        self.timeout = timeout

    @staticmethod
    def query_url(level: int, weight: int) -> str:
        params = {"level": level, "weight": weight, "_format": "json"}
        return f"{API_ROOT}/mf_gamma1/?{urllib.parse.urlencode(params)}"

    def _cache_path(self, url: str) -> Path | None:
        if self.cache_dir is None:
            return None
        return self.cache_dir / "lmfdb" / (hashlib.sha256(url.encode()).hexdigest()[:24] + ".json")

    def fetch(self, url: str) -> dict:
        path = self._cache_path(url)
        if path is not None and path.is_file():
            return json.loads(path.read_text())
        if self.offline:
            raise SourceUnavailable(f"offline mode and no cached response for {url}")
        try:
            with urllib.request.urlopen(url, timeout=self.timeout) as resp:
                payload = json.loads(resp.read().decode())
        except (urllib.error.URLError, OSError, ValueError) as exc:
            raise SourceUnavailable(f"could not fetch {url}: {exc}") from None
        self.store(url, payload)
        return payload

    def store(self, url: str, payload: dict) -> None:
        path = self._cache_path(url)
        if path is not None:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(json.dumps(payload, sort_keys=True))

    def weight3_dimensions(self, level: int) -> dict[str, int]:
        """``{"mf_dim": ..., "cusp_dim": ...}`` for M_3 and S_3 of Gamma_1(level)."""
        payload = self.fetch(self.query_url(level, 3))
        rows = [r for r in payload.get("data", []) if r.get("level") == level and r.get("weight") == 3]
        if len(rows) != 1:
            raise SourceUnavailable(f"expected one LMFDB row for level {level} weight 3, got {len(rows)}")
        row = rows[0]
        try:
            return {"mf_dim": int(row["mf_dim"]), "cusp_dim": int(row["cusp_dim"])}
        except (KeyError, TypeError, ValueError):
            raise SourceUnavailable("LMFDB row lacks mf_dim/cusp_dim") from None
