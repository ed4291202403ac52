"""Append-only NDJSON event journal with snapshot-based compaction.

One JSON object per line; replay from the top reconstructs state. A partial
trailing line (crash mid-write) is ignored on replay. Compaction writes the
current state to a snapshot file and truncates the journal; recovery loads
the snapshot first and replays the remaining events, which must therefore be
idempotent.
"""

import json
import os


class Journal:
    def __init__(self, path, sync=False):
        self.path = str(path)
        self.sync = sync
        self._fh = open(self.path, "a", encoding="utf-8")

    @property
    def snapshot_path(self):
        return self.path + ".snapshot"

    def append(self, event: dict):
        line = json.dumps(event, ensure_ascii=False)
        self._fh.write(line + "\n")
        self._fh.flush()
        if self.sync:
            os.fsync(self._fh.fileno())

    def replay(self):
        """Yield journaled events in order, ignoring a torn final line."""
        if not os.path.exists(self.path):
            return
        with open(self.path, encoding="utf-8") as fh:
            for line in fh:
                if not line.endswith("\n"):
                    break
                line = line.strip()
                if not line:
                    continue
                yield json.loads(line)

    def load_snapshot(self):
        if not os.path.exists(self.snapshot_path):
            return None
        with open(self.snapshot_path, encoding="utf-8") as fh:
            return json.load(fh)

    def compact(self, snapshot: dict):
        """Write state atomically, then truncate the journal."""
        tmp = self.snapshot_path + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(snapshot, fh, ensure_ascii=False)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, self.snapshot_path)
        self._fh.close()
        self._fh = open(self.path, "w", encoding="utf-8")

    def close(self):
        self._fh.close()
