#!/usr/bin/env python3
# Copyright 2026 The consolidsim Authors
# SPDX-License-Identifier: Apache-2.0
"""Aggregate 1998 World Cup binary access logs into a per-second request-rate CSV.

Each log record is 20 bytes, big-endian: timestamp, client id, object id and
size (uint32 each), then method, status, type and server (uint8 each). Only
the timestamp is used. The output has one row per second of the window,
starting at 0:

    timestamp,requests_per_sec
    0,153
    1,171
    ...
"""

import argparse
import gzip
import sys
from datetime import datetime, timezone

import numpy as np

RECORD = np.dtype(
    [
        ("timestamp", ">u4"),
        ("client", ">u4"),
        ("object", ">u4"),
        ("size", ">u4"),
        ("method", "u1"),
        ("status", "u1"),
        ("type", "u1"),
        ("server", "u1"),
    ]
)


def parse_args(argv):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("logs", nargs="+", help="wc_dayN_M.gz files (or uncompressed)")
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument(
        "--start",
        default="1998-06-07T00:00:00+00:00",
        help="window start, ISO 8601 with offset (default: %(default)s)",
    )
    p.add_argument("--days", type=float, default=14, help="window length in days")
    return p.parse_args(argv)


def read_timestamps(path):
    opener = gzip.open if path.endswith(".gz") else open
    with opener(path, "rb") as f:
        data = f.read()
    usable = len(data) - len(data) % RECORD.itemsize
    return np.frombuffer(data[:usable], dtype=RECORD)["timestamp"].astype(np.int64)


def main(argv=None):
    args = parse_args(argv)
    start = int(datetime.fromisoformat(args.start).astimezone(timezone.utc).timestamp())
    seconds = int(args.days * 86400)
    counts = np.zeros(seconds, dtype=np.int64)
    for path in args.logs:
        ts = read_timestamps(path) - start
        ts = ts[(ts >= 0) & (ts < seconds)]
        counts += np.bincount(ts, minlength=seconds)
    if counts.sum() == 0:
        print("no requests fall inside the window", file=sys.stderr)
        return 1
    with open(args.out, "w") as out:
        out.write("timestamp,requests_per_sec\n")
        for t, n in enumerate(counts):
            out.write(f"{t},{n}\n")
    print(f"{args.out}: {seconds} s, {counts.sum()} requests, peak {counts.max()} req/s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
