import asyncio
import os
import shutil
import sys
import threading
import time
from datetime import datetime
from typing import Dict, List, Optional


def grid_enabled() -> bool:
    """Live grid only on a terminal and unless SEPGD_NO_GRID=1."""
    return sys.stdout.isatty() and os.environ.get("SEPGD_NO_GRID") != "1"


class ProgressTracker:
    def __init__(self, stage_name: str, rows: List[str], cols: List[str], enabled: bool = True):
        """Terminal status grid for sweep cells: rows are (γ, T) pairs, columns are n values."""
        self.stage_name = stage_name
        self.rows = rows
        self.cols = cols
        self.enabled = enabled and grid_enabled()
        self.status_matrix: Dict[str, Dict[str, str]] = {}
        self.error_details: Dict[str, Dict[str, Optional[str]]] = {}
        self.notes: Dict[str, Dict[str, List[str]]] = {}
        self.start_time = time.time()
        self.running = True
        self.lock = threading.Lock()
        self.last_update = time.time()
        self.page_index = 0
        self.page_interval = float(os.environ.get("SEPGD_PAGE_INTERVAL", "3.0"))
        self.last_page_switch = time.time()
        self._term_cols = shutil.get_terminal_size((100, 40)).columns

        for row in rows:
            self.status_matrix[row] = {}
            self.error_details[row] = {}
            self.notes[row] = {}
            for col in cols:
                self.status_matrix[row][col] = "⏳ Waiting"
                self.error_details[row][col] = None
                self.notes[row][col] = []

    def update_status(self, row: str, col: str, status: str, error_detail: Optional[str] = None):
        with self.lock:
            if row in self.status_matrix and col in self.status_matrix[row]:
                self.status_matrix[row][col] = status
                if error_detail:
                    self.error_details[row][col] = error_detail
                self.last_update = time.time()

    def add_note(self, row: str, col: str, text: str):
        """Short per-cell message shown under the grid (trial counts, timings)."""
        with self.lock:
            if row in self.notes and col in self.notes[row]:
                ts = datetime.now().strftime("%H:%M:%S")
                self.notes[row][col].append(f"[{ts}] {text}")
                self.last_update = time.time()

    def stop(self):
        self.running = False

    async def display_loop(self):
        if not self.enabled:
            while self.running:
                await asyncio.sleep(0.2)
            return
        last_display_time = 0.0
        while self.running:
            current_time = time.time()
            if (current_time - last_display_time >= 1.0) or (self.last_update > last_display_time):
                self._display_matrix()
                last_display_time = current_time
            await asyncio.sleep(0.5)
        self._display_matrix()

    def _display_matrix(self):
        with self.lock:
            os.system('clear' if os.name == 'posix' else 'cls')
            self._term_cols = shutil.get_terminal_size((100, 40)).columns
            now = time.time()
            if now - self.last_page_switch >= self.page_interval:
                self.page_index += 1
                self.last_page_switch = now

            elapsed = now - self.start_time
            elapsed_str = f"{int(elapsed // 60):02d}:{int(elapsed % 60):02d}"
            print(f"🚀 {self.stage_name}")
            print(f"⏰ Time: {datetime.now().strftime('%H:%M:%S')} | Elapsed: {elapsed_str}")
            print("=" * self._term_cols)

            row_col_width = 22
            col_width = 16
            per_page = max(1, (self._term_cols - row_col_width - 2) // col_width)
            total_pages = max(1, (len(self.cols) + per_page - 1) // per_page)
            page = self.page_index % total_pages
            visible = self.cols[page * per_page:(page + 1) * per_page]

            header = f"{'cell':<{row_col_width}}" + "".join(f"{c[:col_width - 2]:<{col_width}}" for c in visible)
            print(header)
            if total_pages > 1:
                print(f"columns page {page + 1}/{total_pages}")
            print("-" * self._term_cols)
            for row in self.rows:
                line = f"{row[:row_col_width - 2]:<{row_col_width}}"
                for col in visible:
                    status = self.status_matrix[row][col]
                    if len(status) > col_width - 1:
                        status = status[:max(1, col_width - 4)] + "..."
                    line += f"{status:<{col_width}}"
                print(line)

            summary = self.get_summary()
            print("-" * self._term_cols)
            print(f"📊 Status: ✅ {summary['completed']} | ❌ {summary['failed']} | "
                  f"⏳ {summary['running']} | Total: {summary['total']}")
            if summary['total']:
                percent = (summary['completed'] + summary['failed']) / summary['total'] * 100
                width = max(10, min(40, self._term_cols - 20))
                filled = int(width * percent / 100)
                print(f"📈 Progress: [{'█' * filled}{'░' * (width - filled)}] {percent:.1f}%")
                if summary['completed'] > 0:
                    per_task = elapsed / summary['completed']
                    eta = (summary['total'] - summary['completed'] - summary['failed']) * per_task
                    print(f"⏱️ ETA: {int(eta // 60):02d}:{int(eta % 60):02d} (avg {per_task:.1f}s/cell)")
            self._display_notes()
            self._display_errors()

    def _recent_notes(self, limit: int) -> List[str]:
        notes = [(text, f"{row} + n={col}") for row in self.rows for col in self.cols for text in self.notes[row][col]]
        notes.sort(key=lambda item: item[0][:10])
        return [f"{where}: {text}" for text, where in notes[-limit:]] if limit > 0 else []

    def recent_notes(self, limit: int = 6) -> List[str]:
        """Latest notes across all cells, oldest first."""
        with self.lock:
            return self._recent_notes(limit)

    def _display_notes(self, limit: int = 6):
        for line in self._recent_notes(limit):
            print(f"📝 {line}")

    def _display_errors(self):
        errors = [(r, c, self.error_details[r][c]) for r in self.rows for c in self.cols if self.error_details[r][c]]
        if errors:
            print("\n" + "━" * 16 + " ERRORS " + "━" * 16)
            for row, col, err in errors[-6:]:
                print(f"❌ {row} + n={col}:")
                print(f"   {err.splitlines()[0] if err else ''}")
            print("━" * 40)

    def get_summary(self) -> Dict[str, int]:
        total = len(self.rows) * len(self.cols)
        completed = failed = 0
        for row in self.rows:
            for col in self.cols:
                status = self.status_matrix[row][col]
                if "✅" in status:
                    completed += 1
                elif "❌" in status:
                    failed += 1
        return {'total': total, 'completed': completed, 'failed': failed,
                'running': total - completed - failed}

    def get_all_errors(self) -> List[Dict[str, str]]:
        errors = []
        for row in self.rows:
            for col in self.cols:
                if self.error_details[row][col]:
                    errors.append({'row': row, 'col': col, 'error': self.error_details[row][col],
                                   'status': self.status_matrix[row][col]})
        return errors
