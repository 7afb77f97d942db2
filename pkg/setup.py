from setuptools import find_namespace_packages, setup

with open('requirements.txt') as f:
    requirements = [line.strip() for line in f if line.strip()]

setup(
    name='patchwork',
    version='0.1.0',
    description='Exact computations on finite and pro-finite stably compact spaces',
    py_modules=['cli'],
    packages=find_namespace_packages(include=['commands', 'commands.*']),
    data_files=[('templates', ['templates/hasse.dot.j2', 'templates/report.schema.json',
                               'templates/report.txt.j2', 'templates/space_report.txt'])],
    install_requires=requirements,
    python_requires='>=3.8',
    entry_points={
        'console_scripts': [
            'patchwork=cli:cli',
        ],
    },
)
