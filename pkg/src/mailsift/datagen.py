"""Synthetic phishing/ham email templates for demos and fixture-scale tests.

Real corpora are large and externally licensed, so desk-scale runs are fed
from a deterministic template generator instead. The phishing templates
lean on the usual scam vocabulary (urgency, credential requests, document
requests, prizes); the ham templates read like routine office and campus
mail.
"""

from __future__ import annotations

import numpy as np

from .corpus import CorpusSchema, EmailRecord, LoadedDataset

# A recruitment-scam style email used across demos and smoke tests.
SAMPLE_PHISHING_EMAIL = """\
Subject: Personal Assistant Opportunity - Dr. Sheldon Cooper
Dear Applicant,
Dr. Sheldon Cooper needs a reliable assistant. This is a great work-from-home opportunity with a competitive salary!
Tasks include errands, communication, and some academic responsibilities. We need someone organized and trustworthy.
Send your CV, phone number, and a scan of your passport for verification to shel.cooper@caltech.edu .
Fill out the application form we sent you and sign it (scan it back). Don't miss out on this amazing chance!
Sincerely,
Professor Cooper's Research Team
"""

SAMPLE_HAM_EMAIL = """\
Subject: Agenda for the quarterly project review
Hi team,
Attached are the minutes from last week and the agenda for Thursday's review.
Please read the budget section before the meeting and add your comments to the shared document.
Thanks,
Dana
"""

_SPAM_SUBJECTS = [
    "Urgent: verify {thing} now",
    "{prize} winner notification",
    "Work from home {role} opportunity",
    "Your {thing} has been suspended",
    "Final notice: claim your {prize}",
    "Immediate {role} position, great salary",
]

_SPAM_BODIES = [
    "Dear {name}, your {thing} requires urgent verification. Click the secure link and "
    "confirm your password within 24 hours or access will be suspended. Act now.",
    "Congratulations {name}! You have won a {prize}. To claim the reward, send your full "
    "name, phone number and a scan of your passport for verification. Don't miss this chance.",
    "We are hiring a reliable {role}. Competitive salary, flexible hours, work from home. "
    "Send your CV and phone number today. Fill out the attached form, sign it and scan it back.",
    "Dear customer, unusual activity was detected on your {thing}. Verify your account "
    "immediately by replying with your login details. Failure to act will lead to suspension.",
    "Exclusive offer for {name}: cheap meds, guaranteed results, no prescription needed. "
    "Order now and claim free bonus pills. Limited time only, act fast.",
    "A wealthy client left {prize} unclaimed. As his {role}, I need a trustworthy partner "
    "to transfer the funds. Send your bank details and phone number for verification.",
]

_HAM_SUBJECTS = [
    "Minutes from the {day} meeting",
    "{topic} report attached",
    "Lunch on {day}?",
    "Schedule change for the {topic} review",
    "Notes from today's {topic} lecture",
    "Reminder: {topic} deadline on {day}",
]

_HAM_BODIES = [
    "Hi {name}, attached are the minutes from the {day} meeting. Please review the action "
    "items and let me know if I missed anything before I circulate them to the team.",
    "Hello {name}, the {topic} report is ready. The summary tables are on page two; the "
    "appendix lists the raw numbers. Happy to walk through the details on a call.",
    "Hey {name}, a few of us are grabbing lunch near the office on {day}. Join if you are "
    "around; we can also go over the {topic} draft afterwards.",
    "Hi {name}, the {topic} review moved to {day} at 10am. The agenda stays the same; "
    "slides are due the evening before. Ping me if the new slot clashes with anything.",
    "Dear students, the {topic} lecture notes are now on the course page. The problem set "
    "is due {day}; office hours are in the library as usual. See the campus newsletter for "
    "seminar times at the university.",
    "Hi {name}, this is a reminder that the {topic} deadline is {day}. The submission form "
    "is on the internal wiki; the budget spreadsheet was updated this morning.",
]

_POOLS = {
    "name": ["friend", "customer", "colleague", "applicant", "member", "user"],
    "thing": ["account", "mailbox", "payment method", "subscription", "tax refund"],
    "prize": ["$2,500,000", "a new phone", "a luxury vacation", "a cash reward", "$900,000"],
    "role": ["assistant", "account manager", "agent", "representative", "coordinator"],
    "day": ["Monday", "Tuesday", "Wednesday", "Thursday", "Friday"],
    "topic": ["budget", "quarterly", "research", "curriculum", "maintenance", "onboarding"],
}


def _fill(template: str, rng: np.random.Generator) -> str:
    out = template
    for key, pool in _POOLS.items():
        while "{" + key + "}" in out:
            out = out.replace("{" + key + "}", pool[int(rng.integers(len(pool)))], 1)
    return out


def synthetic_dataset(n_spam: int = 120, n_ham: int = 120, seed: int = 7) -> LoadedDataset:
    """Deterministic subject/body dataset with the given class sizes."""
    rng = np.random.default_rng(seed)
    records: list[EmailRecord] = []
    for label, count, subjects, bodies in (
        (1, n_spam, _SPAM_SUBJECTS, _SPAM_BODIES),
        (0, n_ham, _HAM_SUBJECTS, _HAM_BODIES),
    ):
        for _ in range(count):
            subject = _fill(subjects[int(rng.integers(len(subjects)))], rng)
            body = _fill(bodies[int(rng.integers(len(bodies)))], rng)
            records.append(
                EmailRecord(body=body, label=label, source="synthetic", subject=subject)
            )
    return LoadedDataset(records=records, schema=CorpusSchema.SUBJECT_BODY, path="synthetic")
