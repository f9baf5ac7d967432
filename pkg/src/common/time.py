"""UTC-aware timestamps for run history and generated tables."""

from datetime import datetime, timezone
from typing import Optional, Union

from dateutil import parser as dateutil_parser
from dateutil.tz import gettz

DISPLAY_TZ = gettz("UTC")

Moment = Union[str, datetime, None]


def now_utc() -> datetime:
    return datetime.now(timezone.utc)


def parse_iso(moment: Moment) -> Optional[datetime]:
    """ISO text or a datetime as an aware datetime; naive values are read as UTC.

    Unparseable text gives None.
    """
    if isinstance(moment, str):
        try:
            moment = dateutil_parser.isoparse(moment) if moment else None
        except (ValueError, TypeError):
            return None
    if moment is None:
        return None
    return moment if moment.tzinfo else moment.replace(tzinfo=timezone.utc)


def hours_since(moment: Moment, now: Optional[datetime] = None) -> Optional[float]:
    moment = parse_iso(moment)
    if moment is None:
        return None
    return ((now or now_utc()) - moment).total_seconds() / 3600


def format_relative(moment: Moment, now: Optional[datetime] = None) -> str:
    """Past moments as "just now", "12 minutes ago", "3 hours ago", "yesterday" or "5 days ago"."""
    hours = hours_since(moment, now)
    if hours is None:
        return "never"
    if hours < 0:
        return "in the future"
    if hours < 1 / 60:
        return "just now"
    if hours < 1:
        return f"{int(hours * 60)} minutes ago"
    if hours < 24:
        return f"{int(hours)} hours ago"
    if hours < 48:
        return "yesterday"
    return f"{int(hours / 24)} days ago"


def format_datetime(moment: Moment) -> str:
    moment = parse_iso(moment)
    if moment is None:
        return "N/A"
    return moment.astimezone(DISPLAY_TZ).strftime("%b %d, %Y at %H:%M UTC")
