from django.apps import AppConfig


class PursuitConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'pursuit'
    verbose_name = 'Pursuit game'
