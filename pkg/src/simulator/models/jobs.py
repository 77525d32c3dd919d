"""Job request/result containers for the simulated backend"""

from dataclasses import dataclass
from typing import Dict, List, Tuple

from src.pulse import Schedule, schedule_from_dict, schedule_to_dict

MAX_SCHEDULES_PER_JOB = 100


@dataclass(frozen=True)
class JobRequest:
    schedules: Tuple[Schedule, ...]
    shots: int = 1000
    noiseless: bool = False

    def __post_init__(self):
        object.__setattr__(self, 'schedules', tuple(self.schedules))

    def to_dict(self):
        return {'schedules': [schedule_to_dict(s) for s in self.schedules],
                'shots': self.shots, 'noiseless': self.noiseless}

    @classmethod
    def from_dict(cls, data):
        return cls(tuple(schedule_from_dict(s) for s in data['schedules']),
                   int(data.get('shots', 1000)), bool(data.get('noiseless', False)))


@dataclass(frozen=True)
class JobResult:
    counts: List[Dict[str, int]]
    completed_at: float
    job_id: str = ""

    def probabilities(self, index):
        counts = self.counts[index]
        total = sum(counts.values())
        return {k: v / total for k, v in counts.items()}

    def to_dict(self):
        return {'counts': self.counts, 'completed_at': self.completed_at, 'job_id': self.job_id}

    @classmethod
    def from_dict(cls, data):
        return cls([dict(c) for c in data['counts']], float(data['completed_at']), data['job_id'])
