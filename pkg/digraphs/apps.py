from django.apps import AppConfig


class DigraphsConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'digraphs'
    verbose_name = 'Digraphs'
