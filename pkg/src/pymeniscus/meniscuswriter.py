"""
Output artifacts of a run: diagnostics CSV, JSON state snapshots and
deterministic SVG plots.

Created on 18 Oct 2026

:author: semuadmin
:copyright: SEMU Consulting © 2026
:license: BSD 3-Clause
"""

# pylint: disable=invalid-name

import csv
import json
import logging
from pathlib import Path

import matplotlib
import numpy as np

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # pylint: disable=wrong-import-position

from pymeniscus.diagnostics import DecayFit  # pylint: disable=wrong-import-position
from pymeniscus.exceptions import (  # pylint: disable=wrong-import-position
    MeniscusError,
    MeniscusIOError,
    ParameterError,
)
from pymeniscus.filmstepper import FilmState, StepHistory  # pylint: disable=wrong-import-position
from pymeniscus.meniscushelpers import fmt_float  # pylint: disable=wrong-import-position
from pymeniscus.meniscustypes_core import DIAG_COLUMNS, PROFILE_COLUMNS  # pylint: disable=wrong-import-position

logger = logging.getLogger(__name__)

SNAPSHOT_VERSION = 1
# fixed hash salt and no date stamp give byte-identical SVG files
SVG_RCPARAMS = {"svg.hashsalt": "pymeniscus", "svg.fonttype": "none"}
SVG_METADATA = {"Date": None}


class DiagnosticsWriter:
    """
    DiagnosticsWriter class.

    Streams DiagnosticsRecord rows to a CSV file with the fixed column
    order t, mass, energy, dissipation, lambda, min_h, newton_iters, dt.
    Usable as a context manager and as a stepper sink.
    """

    def __init__(self, path, stride: int = 1):
        """
        Constructor.

        :param path: output file path
        :param int stride: write every stride-th record (1)
        :raises: ParameterError if stride < 1
        """

        if stride < 1:
            raise ParameterError(f"Output stride must be >= 1, got {stride}")
        self._path = Path(path)
        self._stride = stride
        self._count = 0
        self._stream = None
        self._writer = None
        self.rows = 0

    def __enter__(self):
        """
        Context manager enter routine.
        """

        self.open()
        return self

    def __exit__(self, exc_type, exc_value, exc_traceback):
        """
        Context manager exit routine.
        """

        self.close()

    def __call__(self, record):
        """
        Stepper sink interface, see :meth:`write`.
        """

        self.write(record)

    def open(self):
        """
        Open the file and write the header row.

        :raises: MeniscusIOError
        """

        try:
            self._path.parent.mkdir(parents=True, exist_ok=True)
            self._stream = open(self._path, "w", newline="", encoding="utf-8")
            self._writer = csv.writer(self._stream, lineterminator="\n")
            self._writer.writerow(DIAG_COLUMNS)
        except OSError as err:
            raise MeniscusIOError(f"Cannot write diagnostics to {self._path}: {err}") from err

    def write(self, record, force: bool = False):
        """
        Write one record, subject to the output stride.

        :param DiagnosticsRecord record: record
        :param bool force: write regardless of stride (False)
        :raises: MeniscusIOError
        """

        if self._writer is None:
            self.open()
        take = force or self._count % self._stride == 0
        self._count += 1
        if not take:
            return
        try:
            self._writer.writerow(record.to_row())
            self.rows += 1
        except OSError as err:
            raise MeniscusIOError(f"Cannot write diagnostics to {self._path}: {err}") from err

    def close(self):
        """
        Close the file.
        """

        if self._stream is not None:
            self._stream.close()
            self._stream = None
            self._writer = None


def write_diag(records, path) -> int:
    """
    Write a sequence of diagnostics records as CSV (header plus one
    row per record).

    :param records: iterable of DiagnosticsRecord
    :param path: output file path
    :return: number of data rows written
    :rtype: int
    :raises: MeniscusIOError
    """

    with DiagnosticsWriter(path) as writer:
        for record in records:
            writer.write(record)
    return writer.rows


def write_profile(x, h, path) -> int:
    """
    Write a sampled film profile as CSV with columns x, h.

    :param x: positions
    :param h: heights, same length as x
    :param path: output file path
    :return: number of data rows written
    :rtype: int
    :raises: ParameterError on a length mismatch, MeniscusIOError
    """

    x = np.asarray(x, dtype=float)
    h = np.asarray(h, dtype=float)
    if x.shape != h.shape or x.ndim != 1:
        raise ParameterError(f"Profile needs matching 1-d samples, got {x.shape} and {h.shape}")
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="", encoding="utf-8") as stream:
            writer = csv.writer(stream, lineterminator="\n")
            writer.writerow(PROFILE_COLUMNS)
            writer.writerows([fmt_float(xi), fmt_float(hi)] for xi, hi in zip(x, h))
    except OSError as err:
        raise MeniscusIOError(f"Cannot write profile to {path}: {err}") from err
    return x.size


def read_diag(path) -> list:
    """
    Read a diagnostics CSV back into a list of dicts of floats.

    :param path: CSV file path
    :return: list of rows keyed by column name
    :rtype: list
    :raises: MeniscusIOError
    """

    try:
        with open(path, newline="", encoding="utf-8") as stream:
            rows = list(csv.DictReader(stream))
    except OSError as err:
        raise MeniscusIOError(f"Cannot read diagnostics from {path}: {err}") from err
    return [{key: float(val) for key, val in row.items()} for row in rows]


def write_snapshot(state: FilmState, path, history: StepHistory = None):
    """
    Write a state snapshot as JSON: grid metadata, heights, Lambda, t and
    the stepper continuation data (previous state, step sizes, floor).

    :param FilmState state: state
    :param path: output file path
    :param StepHistory history: continuation data (None)
    :raises: MeniscusIOError
    """

    doc = {"version": SNAPSHOT_VERSION, "state": state.to_dict()}
    if history is not None:
        doc["history"] = {
            "previous": None if history.previous is None else history.previous.to_dict(),
            "dt_prev": history.dt_prev,
            "dt": history.dt,
            "floor": history.floor,
            "steps": history.steps,
        }
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        # repr of a float round-trips, so a reload is bit-exact
        path.write_text(json.dumps(doc, indent=1), encoding="utf-8")
    except OSError as err:
        raise MeniscusIOError(f"Cannot write snapshot to {path}: {err}") from err
    logger.debug("Snapshot t=%s written to %s", state.t, path)


def load_snapshot(path) -> tuple:
    """
    Load a snapshot written by :func:`write_snapshot`.

    :param path: snapshot file path
    :return: tuple of (FilmState, StepHistory or None)
    :rtype: tuple
    :raises: MeniscusIOError
    """

    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
        state = FilmState.from_dict(doc["state"])
        hist = doc.get("history")
        if hist is None:
            return state, None
        prev = hist.get("previous")
        history = StepHistory(
            None if prev is None else FilmState.from_dict(prev),
            hist.get("dt_prev"),
            hist.get("dt"),
            hist.get("floor"),
            int(hist.get("steps", 0)),
        )
    except (OSError, json.JSONDecodeError, KeyError, MeniscusError) as err:
        raise MeniscusIOError(f"Cannot load snapshot from {path}: {err}") from err
    return state, history


def load_samples(path) -> FilmState:
    """
    Explicit initial samples, a snapshot file without history.

    :param path: snapshot file path
    :return: state
    :rtype: FilmState
    :raises: MeniscusIOError
    """

    return load_snapshot(path)[0]


def _save_svg(fig, path: Path):
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(path, format="svg", metadata=SVG_METADATA)
    except OSError as err:
        raise MeniscusIOError(f"Cannot write plot to {path}: {err}") from err
    finally:
        plt.close(fig)


def render_plots(states: list, records: list, outdir, fit: DecayFit = None, E_bar: float = None) -> list:
    """
    Deterministic SVG plots of a run: an overlay of h(x) snapshots and
    the (excess) energy against t on a log scale, with the fitted decay
    line when given.

    :param list states: FilmState snapshots to overlay
    :param list records: DiagnosticsRecord series
    :param outdir: output directory
    :param DecayFit fit: decay fit to draw (None)
    :param float E_bar: equilibrium energy subtracted from E (None)
    :return: list of written paths
    :rtype: list
    :raises: MeniscusIOError
    """

    outdir = Path(outdir)
    written = []
    with plt.rc_context(SVG_RCPARAMS):
        fig, ax = plt.subplots(figsize=(6, 4))
        for state in states:
            ax.plot(state.x, state.H, label=f"t={state.t:.4g}")
        ax.set_xlabel("x")
        ax.set_ylabel("h(x)")
        if states:
            ax.legend(fontsize="small")
        path = outdir / "profiles.svg"
        _save_svg(fig, path)
        written.append(path)

        fig, ax = plt.subplots(figsize=(6, 4))
        t = [r.t for r in records]
        E = [r.energy - (E_bar or 0.0) for r in records]
        positive = [(ti, ei) for ti, ei in zip(t, E) if ei > 0]
        if positive:
            ax.semilogy(*zip(*positive), label="E - E_bar" if E_bar is not None else "E")
        if fit is not None and positive:
            tf = [ti for ti, _ in positive if fit.window[0] <= ti <= fit.window[1]]
            if tf:
                ax.semilogy(
                    tf,
                    fit.prefactor * np.exp(-fit.omega * np.asarray(tf)),
                    "--",
                    label=f"fit omega={fit.omega:.4g}",
                )
        ax.set_xlabel("t")
        ax.set_ylabel("energy")
        if positive:
            ax.legend(fontsize="small")
        path = outdir / "energy.svg"
        _save_svg(fig, path)
        written.append(path)
    logger.debug("Plots written to %s", outdir)
    return written
