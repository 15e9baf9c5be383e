import asyncio
import functools
import json
import os
import threading
import traceback
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

from .logging_utils import ts_print
from .progress_tracker import ProgressTracker


def default_concurrency() -> int:
    value = os.environ.get("SEPGD_THREADS")
    if value:
        try:
            return max(1, int(value))
        except ValueError:
            raise ValueError(f"SEPGD_THREADS must be an integer, got {value!r}")
    return max(1, os.cpu_count() or 1)


class ParallelRunner:
    def __init__(self, max_concurrent: Optional[int] = None, show_grid: bool = True):
        """Runs one task per (row, col) grid cell; CPU work goes to a thread pool."""
        self.max_concurrent = max_concurrent or default_concurrency()
        self.show_grid = show_grid
        self._executor = ThreadPoolExecutor(max_workers=self.max_concurrent)
        self._save_lock = threading.Lock()

    async def run_parallel_tasks(self,
                                 rows: List[str],
                                 cols: List[str],
                                 task_func: Callable,
                                 stage_name: str,
                                 valid_combinations: Optional[List[tuple]] = None,
                                 **kwargs) -> Dict[str, Any]:
        """Run the rows × cols task matrix; results come back in grid order."""
        semaphore = asyncio.Semaphore(self.max_concurrent)
        progress_tracker = ProgressTracker(stage_name, rows, cols, enabled=self.show_grid)

        tasks = []
        for row in rows:
            for col in cols:
                if valid_combinations is not None and (row, col) not in valid_combinations:
                    continue
                task = asyncio.create_task(
                    self._run_single_task(semaphore, task_func, row, col, progress_tracker, **kwargs)
                )
                tasks.append((row, col, task))

        progress_task = asyncio.create_task(progress_tracker.display_loop())
        try:
            results = []
            for row, col, task in tasks:
                result = await task
                results.append({'row': row, 'col': col, 'result': result})
        finally:
            progress_tracker.stop()
            await progress_task

        all_errors = progress_tracker.get_all_errors()
        successful_count = len([r for r in results if r['result'].get('success')])
        failed_count = len(results) - successful_count

        summary = {
            'stage': stage_name,
            'total_tasks': len(results),
            'successful_tasks': successful_count,
            'failed_tasks': failed_count,
            'results': results,
            'errors': all_errors
        }
        ts_print(f"{stage_name} complete: {successful_count} success, {failed_count} failed")
        return summary

    async def _run_single_task(self,
                               semaphore: asyncio.Semaphore,
                               task_func: Callable,
                               row: str,
                               col: str,
                               progress_tracker: ProgressTracker,
                               **kwargs) -> Dict[str, Any]:
        async with semaphore:
            progress_tracker.update_status(row, col, "🚀 Running")
            try:
                loop = asyncio.get_running_loop()
                call = functools.partial(task_func, row, col, progress_tracker, **kwargs)
                result = await loop.run_in_executor(self._executor, call)
                if result.get('success'):
                    progress_tracker.update_status(row, col, "✅ Done")
                else:
                    error_msg = result.get('error', 'Unknown error')
                    progress_tracker.update_status(row, col, f"❌ Failed: {error_msg}", error_detail=error_msg)
                return result
            except Exception as e:
                full_error = traceback.format_exc()
                error_summary = str(e)
                progress_tracker.update_status(
                    row, col, f"❌ Failed: {error_summary}",
                    error_detail=f"{error_summary}\n\nFull traceback:\n{full_error}"
                )
                # keep the sweep going; the failure is reported in the summary
                return {
                    'error': error_summary,
                    'full_error': full_error,
                    'row': row,
                    'col': col,
                    'success': False
                }

    def shutdown(self):
        self._executor.shutdown(wait=True)

    def save_incremental_progress(self,
                                  stage_name: str,
                                  task_id: str,
                                  data: Dict[str, Any],
                                  base_dir: str):
        """Write one finished task to <base_dir>/progress/<stage>/<task_id>.json and update summary.json."""
        with self._save_lock:
            self._save_progress(Path(base_dir) / "progress" / stage_name, task_id, data)

    def _save_progress(self, progress_dir: Path, task_id: str, data: Dict[str, Any]):
        progress_dir.mkdir(parents=True, exist_ok=True)

        task_file = progress_dir / f"{task_id}.json"
        with open(task_file, 'w', encoding='utf-8') as f:
            json.dump(data, f, indent=2, ensure_ascii=False, sort_keys=True)

        summary_file = progress_dir / "summary.json"
        if summary_file.exists():
            with open(summary_file, 'r', encoding='utf-8') as f:
                summary = json.load(f)
        else:
            summary = {'completed_tasks': []}

        summary['completed_tasks'] = [t for t in summary['completed_tasks'] if t.get('task_id') != task_id]
        if data.get('error'):
            summary['completed_tasks'].append({
                'task_id': task_id,
                'status': 'failed',
                'error': data.get('error'),
                'full_error': data.get('full_error')
            })
        else:
            summary['completed_tasks'].append({'task_id': task_id, 'status': 'success'})
        summary['completed_tasks'].sort(key=lambda t: t['task_id'])

        with open(summary_file, 'w', encoding='utf-8') as f:
            json.dump(summary, f, indent=2, ensure_ascii=False, sort_keys=True)
