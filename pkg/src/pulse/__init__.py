"""Pulse envelopes, channels and schedules"""

from src.pulse.envelopes import (
    DURATION_STEP,
    DragPulse,
    GaussianSquarePulse,
    ceil_duration,
    drag_area,
    envelope_area,
    envelope_at,
    gs_area,
    gs_with_area,
    pulse_from_dict,
    pulse_to_dict,
    quantize_duration,
)
from src.pulse.schedule import (
    Barrier,
    Channel,
    FrameChange,
    Play,
    Schedule,
    ScheduleBuilder,
    schedule_duration,
    schedule_from_dict,
    schedule_from_json,
    schedule_to_dict,
    schedule_to_json,
)

__all__ = [
    'DURATION_STEP', 'DragPulse', 'GaussianSquarePulse', 'ceil_duration', 'drag_area',
    'envelope_area', 'envelope_at', 'gs_area', 'gs_with_area', 'pulse_from_dict', 'pulse_to_dict', 'quantize_duration',
    'Barrier', 'Channel', 'FrameChange', 'Play', 'Schedule', 'ScheduleBuilder',
    'schedule_duration', 'schedule_from_dict', 'schedule_from_json', 'schedule_to_dict',
    'schedule_to_json',
]
