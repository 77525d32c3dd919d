"""
Service loop around ``CalibrationDaemon``.

Runs a cycle every ``cadence_s`` seconds. In simulated-time mode the wait is
spent by advancing the backend clock instead of sleeping, so multi-day drift
windows pass in seconds. Failed cycles back off exponentially.
"""

import asyncio
import logging
import sys

from src.daemon.cycle import write_report

logger = logging.getLogger(__name__)


class DaemonService:
    """Asynchronous cycle scheduler with backoff and clean shutdown"""

    def __init__(self, daemon, cadence_s=None, time_factor=None, max_backoff_s=None, stream=None):
        """Initialize the service.

        ``time_factor`` enables simulated time: each wait advances the backend
        by the full interval and sleeps ``interval / time_factor`` wall seconds
        (zero when the factor is infinite).
        """
        self.daemon = daemon
        self.cadence_s = cadence_s or daemon.config.cadence_s
        self.time_factor = time_factor
        self.max_backoff_s = max_backoff_s or daemon.config.max_backoff_s
        self.stream = stream or sys.stdout
        self.failures = 0
        self.reports = []
        self._stop = asyncio.Event()

    @property
    def running(self):
        return not self._stop.is_set()

    def stop(self):
        logger.info("🛑 shutdown requested; finishing the current cycle")
        self._stop.set()

    def next_delay(self):
        if self.failures == 0:
            return self.cadence_s
        return min(self.cadence_s * 2 ** (self.failures - 1), self.max_backoff_s)

    async def _wait(self, seconds):
        if self.time_factor:
            await asyncio.to_thread(self.daemon.backend.advance_time, seconds)
            wall = seconds / self.time_factor
        else:
            wall = seconds
        try:
            await asyncio.wait_for(self._stop.wait(), timeout=wall)
        except asyncio.TimeoutError:
            pass

    async def run(self, max_cycles=None):
        """Cycle until stopped (or ``max_cycles`` cycles have run)"""
        cycles = 0
        while self.running:
            try:
                report = await asyncio.to_thread(self.daemon.run_cycle)
            except Exception as exc:
                self.failures += 1
                logger.error("❌ cycle failed (%d in a row): %s", self.failures, exc)
            else:
                self.failures = self.failures + 1 if report.skipped else 0
                self.reports.append(report)
                write_report(report, self.daemon.config.data_dir, self.stream)

            cycles += 1
            if max_cycles is not None and cycles >= max_cycles:
                break
            if self.running:
                await self._wait(self.next_delay())
        return self.reports
