from django.db.models.signals import post_delete, post_save
from django.dispatch import receiver

from .models import SuiteRecord


@receiver(post_save, sender=SuiteRecord)
@receiver(post_delete, sender=SuiteRecord)
def refresh_run_summary(sender, instance, **kwargs):
    instance.run.refresh_summary()
