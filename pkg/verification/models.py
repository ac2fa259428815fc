from django.db import models


class SuiteRun(models.Model):
    SUITE_CHOICES = [
        ("lemma1", "Clique substitution keeps the cop number"),
        ("lemma2", "Arc subdivision keeps the cop number"),
        ("lemma3", "Clique substitution avoids the 3-stars"),
        ("lemma4", "Subdivision reaches the target girth"),
        ("theorem1", "Sources and doubled projective planes"),
        ("theorem3", "P_k*-free strongly connected digraphs"),
    ]

    suite = models.CharField(max_length=20, choices=SUITE_CHOICES)
    config = models.JSONField(default=dict)
    created_at = models.DateTimeField(auto_now_add=True)

    # kept in sync with the records by verification.signals
    instances_run = models.PositiveIntegerField(default=0, editable=False)
    violation_count = models.PositiveIntegerField(default=0, editable=False)
    violating_seeds = models.JSONField(default=list, editable=False)
    passed = models.BooleanField(default=True, editable=False)

    class Meta:
        ordering = ['-created_at']

    def refresh_summary(self):
        records = self.records.all()
        self.instances_run = records.count()
        violating = records.filter(violation=True)
        self.violation_count = violating.count()
        self.violating_seeds = sorted(set(violating.values_list('seed', flat=True)))
        self.passed = self.violation_count == 0
        self.save(update_fields=['instances_run', 'violation_count', 'violating_seeds', 'passed'])

    def __str__(self):
        status = "passed" if self.passed else f"{self.violation_count} violations"
        return f"{self.get_suite_display()} ({status} | {self.created_at:%Y-%m-%d %H:%M})"


class SuiteRecord(models.Model):
    run = models.ForeignKey(SuiteRun, on_delete=models.CASCADE, related_name='records')
    seed = models.BigIntegerField()
    n = models.PositiveIntegerField(default=0)
    arcs = models.PositiveIntegerField(default=0)
    transform = models.CharField(max_length=64, blank=True)
    c_before = models.PositiveIntegerField(blank=True, null=True)
    c_after = models.PositiveIntegerField(blank=True, null=True)
    verdicts = models.JSONField(default=dict, blank=True)
    micros = models.PositiveBigIntegerField(default=0)
    violation = models.BooleanField(default=False)
    error = models.TextField(blank=True)

    class Meta:
        ordering = ['seed', 'transform']

    def __str__(self):
        return f"{self.run.suite} seed {self.seed} {self.transform}".strip()
